#include "spast/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace spast {

std::vector<ProjectId> Instance::offered_by(LecturerId l) const {
  std::vector<ProjectId> out;
  for (std::size_t j = 0; j < num_projects(); ++j) {
    if (project_owner[j] == l) out.emplace_back(j);
  }
  return out;
}

std::size_t Instance::total_preference_length() const {
  std::size_t m = 0;
  for (const auto& list : student_prefs) {
    for (const auto& tie : list) m += tie.size();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

template <class T>
bool in_range(Id<T> id, std::size_t n) {
  return id.value >= 0 && id.index() < n;
}

}  // namespace

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const std::size_t n1 = inst.num_students();
  const std::size_t n2 = inst.num_projects();
  const std::size_t n3 = inst.num_lecturers();

  auto report = [&](std::string code, std::string where, std::string msg) {
    out.push_back({std::move(code), std::move(where), std::move(msg)});
  };

  if (inst.project_owner.size() != n2) {
    report("shape", "projects", "project_owner and project_capacity differ in length");
    return out;
  }
  if (inst.lecturer_prefs.size() != n3) {
    report("shape", "lecturers", "lecturer_prefs and lecturer_capacity differ in length");
    return out;
  }

  for (std::size_t j = 0; j < n2; ++j) {
    const ProjectId p{j};
    if (inst.project_capacity[j] < 1) {
      report("project-capacity-nonpositive", to_string(p), "project capacity must be at least 1");
    }
    if (!in_range(inst.project_owner[j], n3)) {
      report("unknown-identifier", to_string(p), "project is owned by an unknown lecturer");
    }
  }

  // Acceptability, duplicates, and the students each lecturer must rank.
  std::vector<std::set<std::int32_t>> expected(n3);
  for (std::size_t i = 0; i < n1; ++i) {
    const StudentId s{i};
    std::set<std::int32_t> seen;
    for (const auto& tie : inst.student_prefs[i]) {
      if (tie.empty()) report("empty-tie", to_string(s), "preference list contains an empty tie");
      for (ProjectId p : tie) {
        if (!in_range(p, n2)) {
          report("unknown-identifier", to_string(s), "ranks unknown project p" + std::to_string(p.value + 1));
          continue;
        }
        if (!seen.insert(p.value).second) {
          report("duplicate-entry", to_string(s), to_string(p) + " appears more than once");
        }
        const LecturerId l = inst.project_owner[p.index()];
        if (in_range(l, n3)) expected[l.index()].insert(s.value);
      }
    }
  }

  for (std::size_t k = 0; k < n3; ++k) {
    const LecturerId l{k};
    const std::string where = to_string(l);
    int max_cap = 0;
    int sum_cap = 0;
    bool owns_any = false;
    for (std::size_t j = 0; j < n2; ++j) {
      if (inst.project_owner[j] != l) continue;
      owns_any = true;
      max_cap = std::max(max_cap, inst.project_capacity[j]);
      sum_cap += inst.project_capacity[j];
    }
    const int d = inst.lecturer_capacity[k];
    if (!owns_any) {
      report("lecturer-without-projects", where, "lecturer offers no project");
    } else {
      if (d < max_cap) {
        report("lecturer-capacity-below-max-project", where,
               "d_k below max project capacity (" + std::to_string(d) + " < " + std::to_string(max_cap) + ")");
      }
      if (d > sum_cap) {
        report("lecturer-capacity-above-total", where,
               "d_k above total project capacity (" + std::to_string(d) + " > " + std::to_string(sum_cap) + ")");
      }
    }
    if (d < 1) report("lecturer-capacity-nonpositive", where, "lecturer capacity must be at least 1");

    std::set<std::int32_t> listed;
    for (const auto& tie : inst.lecturer_prefs[k]) {
      if (tie.empty()) report("empty-tie", where, "preference list contains an empty tie");
      for (StudentId s : tie) {
        if (!in_range(s, n1)) {
          report("unknown-identifier", where, "ranks unknown student s" + std::to_string(s.value + 1));
          continue;
        }
        if (!listed.insert(s.value).second) {
          report("duplicate-entry", where, to_string(s) + " appears more than once");
        }
      }
    }
    for (std::int32_t s : expected[k]) {
      if (!listed.count(s)) {
        report("lecturer-list-incomplete", where,
               "lecturer list incomplete: " + to_string(StudentId{s}) + " ranks one of its projects");
      }
    }
    for (std::int32_t s : listed) {
      if (!expected[k].count(s)) {
        report("lecturer-list-extraneous", where,
               to_string(StudentId{s}) + " is listed but finds none of its projects acceptable");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ':' || c == '(' || c == ')') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < line.size() && std::isalnum(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({std::string(line.substr(start, i - start)), start + 1});
      continue;
    }
    throw ParseError(line_no, i + 1, std::string("unexpected character '") + c + "'");
  }
  return out;
}

std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no, std::size_t line_len)
      : tokens_(std::move(tokens)), line_(line_no), end_column_(line_len + 1) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  std::size_t column() const { return done() ? end_column_ : tokens_[pos_].column; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }

  const Token& next(const char* what) {
    if (done()) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  void expect(const char* sym) {
    const std::size_t col = column();
    const Token& t = next(sym);
    if (t.text != sym) throw ParseError(line_, col, std::string("expected '") + sym + "', found '" + t.text + "'");
  }

  long long integer(const char* what) {
    const std::size_t col = column();
    const Token& t = next(what);
    auto v = to_int(t.text);
    if (!v) throw ParseError(line_, col, std::string("expected ") + what + ", found '" + t.text + "'");
    return *v;
  }

  // Returns the 0-based index of an identifier like p3, bounds-checked.
  std::int32_t identifier(char prefix, std::size_t count) {
    const std::size_t col = column();
    const Token& t = next("identifier");
    if (t.text.size() < 2 || t.text[0] != prefix) {
      throw ParseError(line_, col, std::string("expected ") + prefix + "<int>, found '" + t.text + "'");
    }
    auto v = to_int(std::string_view(t.text).substr(1));
    if (!v) throw ParseError(line_, col, "malformed identifier '" + t.text + "'");
    if (*v < 1 || static_cast<std::size_t>(*v) > count) {
      throw ParseError(line_, col, "unknown identifier '" + t.text + "'");
    }
    return static_cast<std::int32_t>(*v - 1);
  }

  template <class IdT>
  TiedList<IdT> preference_sequence(char prefix, std::size_t count) {
    TiedList<IdT> out;
    std::set<std::int32_t> seen;
    auto add = [&](std::vector<IdT>& tie, std::size_t col) {
      const std::int32_t v = identifier(prefix, count);
      if (!seen.insert(v).second) {
        throw ParseError(line_, col, "duplicate preference entry '" + to_string(IdT{v}) + "'");
      }
      tie.emplace_back(v);
    };
    while (!done()) {
      if (peek().text == "(") {
        const std::size_t open_col = column();
        ++pos_;
        std::vector<IdT> tie;
        while (true) {
          if (done()) throw ParseError(line_, open_col, "unterminated tie");
          if (peek().text == ")") {
            ++pos_;
            break;
          }
          if (peek().text == "(") fail("nested tie");
          add(tie, column());
        }
        if (tie.empty()) throw ParseError(line_, open_col, "empty tie");
        out.push_back(std::move(tie));
      } else if (peek().text == ")") {
        fail("unmatched ')'");
      } else {
        std::vector<IdT> tie;
        add(tie, column());
        out.push_back(std::move(tie));
      }
    }
    return out;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t end_column_;
};

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;
  bool have_header = false;
  std::vector<bool> seen_s;
  std::vector<bool> seen_p;
  std::vector<bool> seen_l;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    LineParser lp(std::move(tokens), line_no, line.size());

    if (!have_header) {
      const long long a = lp.integer("student count");
      const long long b = lp.integer("project count");
      const long long c = lp.integer("lecturer count");
      if (a < 0 || b < 0 || c < 0) throw ParseError(line_no, 1, "counts must be non-negative");
      if (!lp.done()) lp.fail("unexpected token after header");
      n1 = static_cast<std::size_t>(a);
      n2 = static_cast<std::size_t>(b);
      n3 = static_cast<std::size_t>(c);
      inst.student_prefs.resize(n1);
      inst.project_capacity.assign(n2, 0);
      inst.project_owner.assign(n2, LecturerId{});
      inst.lecturer_capacity.assign(n3, 0);
      inst.lecturer_prefs.resize(n3);
      seen_s.assign(n1, false);
      seen_p.assign(n2, false);
      seen_l.assign(n3, false);
      have_header = true;
      continue;
    }

    const char kind = lp.peek().text.empty() ? '\0' : lp.peek().text[0];
    const std::size_t head_col = lp.column();
    switch (kind) {
      case 's': {
        const auto i = lp.identifier('s', n1);
        if (seen_s[i]) throw ParseError(line_no, head_col, "student s" + std::to_string(i + 1) + " defined twice");
        seen_s[i] = true;
        lp.expect(":");
        inst.student_prefs[i] = lp.preference_sequence<ProjectId>('p', n2);
        break;
      }
      case 'p': {
        const auto j = lp.identifier('p', n2);
        if (seen_p[j]) throw ParseError(line_no, head_col, "project p" + std::to_string(j + 1) + " defined twice");
        seen_p[j] = true;
        lp.expect(":");
        const long long cap = lp.integer("project capacity");
        lp.expect(":");
        inst.project_owner[j] = LecturerId{lp.identifier('l', n3)};
        inst.project_capacity[j] = static_cast<int>(cap);
        if (!lp.done()) lp.fail("unexpected token after project owner");
        break;
      }
      case 'l': {
        const auto k = lp.identifier('l', n3);
        if (seen_l[k]) throw ParseError(line_no, head_col, "lecturer l" + std::to_string(k + 1) + " defined twice");
        seen_l[k] = true;
        lp.expect(":");
        inst.lecturer_capacity[k] = static_cast<int>(lp.integer("lecturer capacity"));
        lp.expect(":");
        inst.lecturer_prefs[k] = lp.preference_sequence<StudentId>('s', n1);
        break;
      }
      default:
        lp.fail("expected a line starting with s<i>, p<j> or l<k>");
    }
  }

  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing header '<n1> <n2> <n3>'");
  for (std::size_t i = 0; i < n1; ++i) {
    if (!seen_s[i]) throw ParseError(line_no, 1, "missing preference line for s" + std::to_string(i + 1));
  }
  for (std::size_t j = 0; j < n2; ++j) {
    if (!seen_p[j]) throw ParseError(line_no, 1, "missing capacity for p" + std::to_string(j + 1));
  }
  for (std::size_t k = 0; k < n3; ++k) {
    if (!seen_l[k]) throw ParseError(line_no, 1, "missing capacity for l" + std::to_string(k + 1));
  }
  return inst;
}

namespace {

template <class IdT>
void write_list(std::ostream& os, const TiedList<IdT>& list) {
  for (const auto& tie : list) {
    os << ' ';
    if (tie.size() == 1) {
      os << to_string(tie.front());
      continue;
    }
    os << '(';
    for (std::size_t t = 0; t < tie.size(); ++t) {
      if (t) os << ' ';
      os << to_string(tie[t]);
    }
    os << ')';
  }
}

}  // namespace

std::string to_text(const Instance& inst) {
  std::ostringstream os;
  os << inst.num_students() << ' ' << inst.num_projects() << ' ' << inst.num_lecturers() << '\n';
  for (std::size_t i = 0; i < inst.num_students(); ++i) {
    os << to_string(StudentId{i}) << " :";
    write_list(os, inst.student_prefs[i]);
    os << '\n';
  }
  for (std::size_t j = 0; j < inst.num_projects(); ++j) {
    os << to_string(ProjectId{j}) << " : " << inst.project_capacity[j] << " : " << to_string(inst.project_owner[j])
       << '\n';
  }
  for (std::size_t k = 0; k < inst.num_lecturers(); ++k) {
    os << to_string(LecturerId{k}) << " : " << inst.lecturer_capacity[k] << " :";
    write_list(os, inst.lecturer_prefs[k]);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON mirror

namespace {

using nlohmann::json;

[[noreturn]] void json_fail(const std::string& msg) { throw ParseError(0, 0, "json: " + msg); }

std::int32_t json_identifier(const json& v, char prefix, std::size_t count) {
  if (!v.is_string()) json_fail(std::string("expected identifier string with prefix '") + prefix + "'");
  const std::string s = v.get<std::string>();
  if (s.size() < 2 || s[0] != prefix) json_fail("expected " + std::string(1, prefix) + "<int>, found '" + s + "'");
  auto n = to_int(std::string_view(s).substr(1));
  if (!n) json_fail("malformed identifier '" + s + "'");
  if (*n < 1 || static_cast<std::size_t>(*n) > count) json_fail("unknown identifier '" + s + "'");
  return static_cast<std::int32_t>(*n - 1);
}

template <class IdT>
TiedList<IdT> json_list(const json& v, char prefix, std::size_t count, const std::string& owner) {
  if (!v.is_array()) json_fail("preferences of " + owner + " must be an array");
  TiedList<IdT> out;
  std::set<std::int32_t> seen;
  auto add = [&](std::vector<IdT>& tie, const json& item) {
    const auto id = json_identifier(item, prefix, count);
    if (!seen.insert(id).second) json_fail("duplicate preference entry '" + to_string(IdT{id}) + "' in " + owner);
    tie.emplace_back(id);
  };
  for (const auto& entry : v) {
    std::vector<IdT> tie;
    if (entry.is_array()) {
      if (entry.empty()) json_fail("empty tie in " + owner);
      for (const auto& item : entry) add(tie, item);
    } else {
      add(tie, entry);
    }
    out.push_back(std::move(tie));
  }
  return out;
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) json_fail(std::string("missing field '") + key + "'");
  return *it;
}

template <class IdT>
json json_list_out(const TiedList<IdT>& list) {
  json out = json::array();
  for (const auto& tie : list) {
    json t = json::array();
    for (IdT id : tie) t.push_back(to_string(id));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Instance parse_instance_json(const nlohmann::json& doc) {
  if (!doc.is_object()) json_fail("top level must be an object");
  const json& students = field(doc, "students");
  const json& projects = field(doc, "projects");
  const json& lecturers = field(doc, "lecturers");
  if (!students.is_array() || !projects.is_array() || !lecturers.is_array()) {
    json_fail("students, projects and lecturers must be arrays");
  }
  const std::size_t n1 = students.size();
  const std::size_t n2 = projects.size();
  const std::size_t n3 = lecturers.size();

  Instance inst;
  inst.student_prefs.resize(n1);
  inst.project_capacity.assign(n2, 0);
  inst.project_owner.assign(n2, LecturerId{});
  inst.lecturer_capacity.assign(n3, 0);
  inst.lecturer_prefs.resize(n3);
  std::vector<bool> seen_s(n1), seen_p(n2), seen_l(n3);

  for (const auto& s : students) {
    const auto i = json_identifier(field(s, "id"), 's', n1);
    if (seen_s[i]) json_fail("student s" + std::to_string(i + 1) + " defined twice");
    seen_s[i] = true;
    inst.student_prefs[i] = json_list<ProjectId>(field(s, "preferences"), 'p', n2, to_string(StudentId{i}));
  }
  for (const auto& p : projects) {
    const auto j = json_identifier(field(p, "id"), 'p', n2);
    if (seen_p[j]) json_fail("project p" + std::to_string(j + 1) + " defined twice");
    seen_p[j] = true;
    const json& cap = field(p, "capacity");
    if (!cap.is_number_integer()) json_fail("missing capacity for p" + std::to_string(j + 1));
    inst.project_capacity[j] = cap.get<int>();
    inst.project_owner[j] = LecturerId{json_identifier(field(p, "lecturer"), 'l', n3)};
  }
  for (const auto& l : lecturers) {
    const auto k = json_identifier(field(l, "id"), 'l', n3);
    if (seen_l[k]) json_fail("lecturer l" + std::to_string(k + 1) + " defined twice");
    seen_l[k] = true;
    const json& cap = field(l, "capacity");
    if (!cap.is_number_integer()) json_fail("missing capacity for l" + std::to_string(k + 1));
    inst.lecturer_capacity[k] = cap.get<int>();
    inst.lecturer_prefs[k] = json_list<StudentId>(field(l, "preferences"), 's', n1, to_string(LecturerId{k}));
  }
  return inst;
}

Instance parse_instance_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.byte, std::string("json: ") + e.what());
  }
  return parse_instance_json(doc);
}

Instance read_instance(std::string_view content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && content[first] == '{') return parse_instance_json(content);
  return parse_instance(content);
}

nlohmann::json to_json(const Instance& inst) {
  json doc;
  doc["students"] = json::array();
  for (std::size_t i = 0; i < inst.num_students(); ++i) {
    doc["students"].push_back({{"id", to_string(StudentId{i})}, {"preferences", json_list_out(inst.student_prefs[i])}});
  }
  doc["projects"] = json::array();
  for (std::size_t j = 0; j < inst.num_projects(); ++j) {
    doc["projects"].push_back({{"id", to_string(ProjectId{j})},
                               {"capacity", inst.project_capacity[j]},
                               {"lecturer", to_string(inst.project_owner[j])}});
  }
  doc["lecturers"] = json::array();
  for (std::size_t k = 0; k < inst.num_lecturers(); ++k) {
    doc["lecturers"].push_back({{"id", to_string(LecturerId{k})},
                                {"capacity", inst.lecturer_capacity[k]},
                                {"preferences", json_list_out(inst.lecturer_prefs[k])}});
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Rank table

RankTable::RankTable(const Instance& inst)
    : student_rank_(inst.num_students()),
      lecturer_rank_(inst.num_lecturers()),
      owner_(inst.project_owner),
      projected_(inst.num_projects()),
      offered_(inst.num_lecturers()) {
  for (std::size_t i = 0; i < inst.num_students(); ++i) {
    auto& row = student_rank_[i];
    const auto& list = inst.student_prefs[i];
    for (std::size_t r = 0; r < list.size(); ++r) {
      for (ProjectId p : list[r]) row.emplace_back(p.value, static_cast<int>(r));
    }
    std::sort(row.begin(), row.end());
  }
  for (std::size_t k = 0; k < inst.num_lecturers(); ++k) {
    auto& row = lecturer_rank_[k];
    const auto& list = inst.lecturer_prefs[k];
    for (std::size_t r = 0; r < list.size(); ++r) {
      for (StudentId s : list[r]) row.emplace_back(s.value, static_cast<int>(r));
    }
    std::sort(row.begin(), row.end());
  }
  for (std::size_t j = 0; j < inst.num_projects(); ++j) {
    const LecturerId l = inst.project_owner[j];
    offered_[l.index()].emplace_back(j);
    for (const auto& tie : inst.lecturer_prefs[l.index()]) {
      std::vector<StudentId> kept;
      for (StudentId s : tie) {
        if (student_rank(s, ProjectId{j})) kept.push_back(s);
      }
      if (!kept.empty()) projected_[j].push_back(std::move(kept));
    }
  }
}

std::optional<int> RankTable::lookup(const RankRow& row, std::int32_t key) {
  auto it = std::lower_bound(row.begin(), row.end(), std::pair<std::int32_t, int>{key, -1});
  if (it == row.end() || it->first != key) return std::nullopt;
  return it->second;
}

std::optional<int> RankTable::student_rank(StudentId s, ProjectId p) const {
  if (s.index() >= student_rank_.size()) return std::nullopt;
  return lookup(student_rank_[s.index()], p.value);
}

std::optional<int> RankTable::lecturer_rank(LecturerId l, StudentId s) const {
  if (l.index() >= lecturer_rank_.size()) return std::nullopt;
  return lookup(lecturer_rank_[l.index()], s.value);
}

std::optional<int> RankTable::lecturer_rank_for(ProjectId p, StudentId s) const {
  if (p.index() >= owner_.size()) return std::nullopt;
  return lecturer_rank(owner_[p.index()], s);
}

}  // namespace spast
