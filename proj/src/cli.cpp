#include "spast/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "spast/bench.hpp"
#include "spast/generator.hpp"
#include "spast/instance.hpp"
#include "spast/matching.hpp"
#include "spast/oracle.hpp"
#include "spast/solver.hpp"
#include "spast/stability.hpp"

namespace spast {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string content;
  bool json = false;
};

Source read_source(const std::string& path, std::istream& in) {
  Source src;
  if (path == "-") {
    src.content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open '" + path + "'");
    src.content.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  const auto first = src.content.find_first_not_of(" \t\r\n");
  src.json = first != std::string::npos && src.content[first] == '{';
  return src;
}

Instance load_instance(const Source& src, const std::string& path) {
  Instance inst;
  try {
    inst = read_instance(src.content);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
  const auto violations = validate(inst);
  if (!violations.empty()) {
    std::string msg = path + ": invalid instance";
    for (const auto& v : violations) msg += "\n  " + v.location + ": " + v.message + " [" + v.code + "]";
    throw InputError(msg);
  }
  return inst;
}

// Output follows --format when given, the input's format otherwise.
bool want_json(const std::string& format, bool input_json) {
  if (format.empty()) return input_json;
  return format == "json";
}

nlohmann::json stats_json(const SolveStats& s) {
  return {{"m", s.m},
          {"inner_iterations", s.inner_iterations},
          {"outer_iterations", s.outer_iterations},
          {"applications", s.applications},
          {"deletions", s.deletions}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strongly stable matchings for student-project allocation with ties"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string solve_path = "-";
  bool trace = false;
  auto* solve_cmd = app.add_subcommand("solve", "Find the student-optimal strongly stable matching");
  solve_cmd->add_option("instance", solve_path, "Instance file, or - for standard input");
  solve_cmd->add_flag("--trace", trace, "Print the execution trace");

  std::string check_inst, check_match;
  std::string notion_name = "strong";
  auto* check_cmd = app.add_subcommand("check", "List the blocking pairs of a matching");
  check_cmd->add_option("instance", check_inst, "Instance file")->required();
  check_cmd->add_option("matching", check_match, "Matching file, or - for standard input")->required();
  check_cmd->add_option("--notion", notion_name, "Stability notion")->check(CLI::IsMember({"weak", "strong", "super"}));

  std::string oracle_path = "-";
  std::uint64_t max_enum = OracleOptions{}.max_enum;
  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate every strongly stable matching by brute force");
  oracle_cmd->add_option("instance", oracle_path, "Instance file, or - for standard input");
  oracle_cmd->add_option("--max-enum", max_enum, "Refuse when the search space exceeds this");

  GenParams gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n1", gen.n1, "Students");
  gen_cmd->add_option("--n2", gen.n2, "Projects");
  gen_cmd->add_option("--n3", gen.n3, "Lecturers");
  gen_cmd->add_option("--pref-min", gen.pref_len_min, "Shortest student list");
  gen_cmd->add_option("--pref-max", gen.pref_len_max, "Longest student list");
  gen_cmd->add_option("--ties", gen.tie_probability, "Chance an item joins the previous tie");
  gen_cmd->add_option("--cap-min", gen.capacity_min, "Smallest project capacity");
  gen_cmd->add_option("--cap-max", gen.capacity_max, "Largest project capacity");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");

  BenchParams bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the solver on growing instances");
  bench_cmd->add_option("--sizes", bench.sizes, "Target values of m")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Instances per size");
  bench_cmd->add_option("--ties", bench.tie_probability, "Tie probability");
  bench_cmd->add_option("--seed", bench.seed, "Random seed");

  std::vector<const char*> argv{"spast"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*solve_cmd) {
      const Source src = read_source(solve_path, in);
      const Instance inst = load_instance(src, solve_path);
      const SolveResult res = solve(inst);
      if (want_json(format, src.json)) {
        nlohmann::json doc;
        doc["outcome"] = res.solvable() ? "strongly_stable" : "none";
        doc["matching"] = res.solvable() ? to_json(*res.matching) : nlohmann::json(nullptr);
        doc["stats"] = stats_json(res.stats);
        if (trace) doc["trace"] = trace_to_json(res.trace);
        out << doc.dump(2) << '\n';
      } else {
        if (trace) out << format_trace(res.trace);
        if (res.solvable()) {
          out << to_text(*res.matching);
        } else {
          out << "no strongly stable matching exists\n";
        }
      }
      return res.solvable() ? kOk : kNegative;
    }

    if (*check_cmd) {
      if (check_inst == "-" && check_match == "-") throw InputError("only one input may come from standard input");
      const Source isrc = read_source(check_inst, in);
      const Instance inst = load_instance(isrc, check_inst);
      const Source msrc = read_source(check_match, in);
      Matching m;
      try {
        m = read_matching(msrc.content, inst);
      } catch (const ParseError& e) {
        throw InputError(check_match + ": " + e.what());
      }
      const auto invalid = check_valid(inst, m);
      if (!invalid.empty()) {
        std::string msg = check_match + ": not a matching";
        for (const auto& v : invalid) msg += "\n  " + v.message + " [" + v.code + "]";
        throw InputError(msg);
      }
      const Notion notion = *parse_notion(notion_name);
      const BlockingReport rep = blocking_pairs(inst, m, notion);
      if (want_json(format, msrc.json)) {
        nlohmann::json doc;
        doc["notion"] = std::string(to_string(notion));
        doc["blocking_pairs"] = nlohmann::json::array();
        for (const auto& bp : rep.pairs) {
          doc["blocking_pairs"].push_back(
              {{"student", to_string(bp.student)}, {"project", to_string(bp.project)}, {"clause", bp.clause}});
        }
        out << doc.dump(2) << '\n';
      } else {
        for (const auto& bp : rep.pairs) {
          out << '(' << to_string(bp.student) << ", " << to_string(bp.project) << ") [" << bp.clause << "]\n";
        }
      }
      return rep.empty() ? kOk : kNegative;
    }

    if (*oracle_cmd) {
      const Source src = read_source(oracle_path, in);
      const Instance inst = load_instance(src, oracle_path);
      OracleOptions opts;
      opts.max_enum = max_enum;
      opts.keep_all = false;
      OracleResult res;
      try {
        res = enumerate_strongly_stable(inst, opts);
      } catch (const InstanceTooLarge& e) {
        throw InputError(e.what());
      }
      if (want_json(format, src.json)) {
        nlohmann::json doc;
        doc["matchings_enumerated"] = res.num_matchings;
        doc["stable"] = nlohmann::json::array();
        for (const auto& m : res.stable) doc["stable"].push_back(to_json(m));
        out << doc.dump(2) << '\n';
      } else if (res.stable.empty()) {
        out << "no strongly stable matching exists\n";
      } else {
        for (std::size_t t = 0; t < res.stable.size(); ++t) {
          out << "# matching " << t + 1 << '\n' << to_text(res.stable[t]);
        }
      }
      return res.solvable() ? kOk : kNegative;
    }

    if (*gen_cmd) {
      Instance inst;
      try {
        inst = generate(gen);
      } catch (const GenError& e) {
        throw InputError(e.what());
      }
      if (format == "json") {
        out << to_json(inst).dump(2) << '\n';
      } else {
        out << to_text(inst);
      }
      return kOk;
    }

    if (*bench_cmd) {
      const auto rows = run_bench(bench);
      const double slope = loglog_slope(rows);
      if (format == "json") {
        nlohmann::json doc;
        doc["rows"] = nlohmann::json::array();
        for (const auto& r : rows) {
          doc["rows"].push_back({{"m", r.m},
                                 {"median_seconds", r.median_seconds},
                                 {"min_seconds", r.min_seconds},
                                 {"max_seconds", r.max_seconds},
                                 {"solvable", r.solvable},
                                 {"repeats", r.repeats}});
        }
        doc["loglog_slope"] = slope;
        out << doc.dump(2) << '\n';
      } else {
        out << "m\tmedian_s\tmin_s\tmax_s\tsolvable\n";
        for (const auto& r : rows) {
          out << r.m << '\t' << r.median_seconds << '\t' << r.min_seconds << '\t' << r.max_seconds << '\t'
              << r.solvable << '/' << r.repeats << '\n';
        }
        out << "# log-log slope " << slope << '\n';
      }
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace spast
