#include "spast/matching.hpp"

#include <charconv>
#include <sstream>

namespace spast {

std::size_t Matching::size() const {
  std::size_t n = 0;
  for (const auto& p : assignment_) n += p.has_value();
  return n;
}

std::vector<std::pair<StudentId, ProjectId>> Matching::pairs() const {
  std::vector<std::pair<StudentId, ProjectId>> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i]) out.emplace_back(StudentId{i}, *assignment_[i]);
  }
  return out;
}

namespace {

std::int32_t resolve(std::string_view tok, char prefix, std::size_t count, std::size_t line) {
  std::int32_t v = 0;
  if (tok.size() < 2 || tok[0] != prefix) {
    throw ParseError(line, 1, std::string("expected ") + prefix + "<int>, found '" + std::string(tok) + "'");
  }
  auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, 1, "malformed identifier '" + std::string(tok) + "'");
  }
  if (v < 1 || static_cast<std::size_t>(v) > count) {
    throw ParseError(line, 1, "unknown identifier '" + std::string(tok) + "'");
  }
  return v - 1;
}

void place(Matching& m, StudentId s, ProjectId p, std::size_t line) {
  if (m.assigned(s)) throw ParseError(line, 1, to_string(s) + " is assigned twice");
  m.assign(s, p);
}

}  // namespace

Matching parse_matching(std::string_view text, const Instance& inst) {
  Matching m(inst.num_students());
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw ParseError(line_no, 1, "expected '<student> <project>'");
    if (ls >> extra) throw ParseError(line_no, 1, "unexpected token '" + extra + "'");
    const StudentId s{resolve(a, 's', inst.num_students(), line_no)};
    const ProjectId p{resolve(b, 'p', inst.num_projects(), line_no)};
    place(m, s, p, line_no);
  }
  return m;
}

Matching parse_matching_json(const nlohmann::json& doc, const Instance& inst) {
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    auto it = doc.find("matching");
    if (it == doc.end()) throw ParseError(0, 0, "json: missing field 'matching'");
    list = &*it;
  }
  if (!list->is_array()) throw ParseError(0, 0, "json: matching must be an array");
  Matching m(inst.num_students());
  for (const auto& entry : *list) {
    std::string s, p;
    if (entry.is_object() && entry.contains("student") && entry.contains("project") &&
        entry["student"].is_string() && entry["project"].is_string()) {
      s = entry["student"].get<std::string>();
      p = entry["project"].get<std::string>();
    } else if (entry.is_array() && entry.size() == 2 && entry[0].is_string() && entry[1].is_string()) {
      s = entry[0].get<std::string>();
      p = entry[1].get<std::string>();
    } else {
      throw ParseError(0, 0, "json: matching entries must be {student, project} objects");
    }
    place(m, StudentId{resolve(s, 's', inst.num_students(), 0)}, ProjectId{resolve(p, 'p', inst.num_projects(), 0)}, 0);
  }
  return m;
}

Matching read_matching(std::string_view content, const Instance& inst) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (content[first] == '{' || content[first] == '[')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, e.byte, std::string("json: ") + e.what());
    }
    return parse_matching_json(doc, inst);
  }
  return parse_matching(content, inst);
}

std::string to_text(const Matching& m) {
  std::string out;
  for (auto [s, p] : m.pairs()) out += to_string(s) + ' ' + to_string(p) + '\n';
  return out;
}

nlohmann::json to_json(const Matching& m) {
  nlohmann::json list = nlohmann::json::array();
  for (auto [s, p] : m.pairs()) list.push_back({{"student", to_string(s)}, {"project", to_string(p)}});
  return list;
}

}  // namespace spast
