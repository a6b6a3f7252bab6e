#pragma once

#include "nck/engine.hpp"
#include "nck/subgroup_index.hpp"
#include "nck/torus_oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nck::cli {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_invalid = 2;
constexpr int exit_internal = 3;

inline Json read_json(const std::string& path, std::istream& stdin_stream) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << stdin_stream.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ValidationError("input", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("input", std::string("not valid JSON: ") + e.what());
  }
}

inline std::string default_golden_dir() { return std::string(NCK_DATA_DIR) + "/golden"; }

struct GoldenCase {
  std::string name;
  Json problem;
  Json expected;
};

inline std::vector<GoldenCase> load_golden(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<GoldenCase> out;
  std::istringstream none;
  for (const auto& f : files) {
    Json j = read_json(f.string(), none);
    std::string where = f.filename().string();
    if (!j.is_object() || !j.contains("problem") || !j.contains("expected"))
      throw ValidationError(where, "golden file needs \"problem\" and \"expected\"");
    out.push_back({f.stem().string(), j["problem"], j["expected"]});
  }
  return out;
}

/// Golden reports plus a small oracle sweep. Returns the number of failures.
inline int selftest(const SphereTable& table, const std::string& golden_dir, std::ostream& out) {
  int failures = 0;
  auto cases = load_golden(golden_dir);
  for (const auto& gc : cases) {
    std::string got_text;
    bool ok = false;
    try {
      InvariantReport expected = InvariantReport::from_json(gc.expected, gc.name + ".expected");
      InvariantReport got = solve(problem_from_json(gc.problem), table);
      got.table_version = expected.table_version;
      ok = got == expected;
      got_text = got.to_json().dump();
    } catch (const std::exception& e) {
      got_text = std::string("error: ") + e.what();
    }
    if (!ok) {
      ++failures;
      out << "FAIL golden " << gc.name << "\n  expected " << gc.expected.dump() << "\n  actual   " << got_text << "\n";
    }
  }
  out << "golden: " << cases.size() - static_cast<std::size_t>(failures) << "/" << cases.size() << " passed\n";

  int sweep = 0, sweep_fail = 0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          IntMatrix m{{a, b}, {c, d}};
          Integer det = m.determinant();
          if (det == 0) continue;
          ++sweep;
          TorusInstance inst{m, IntMatrix(2, 2), {}};
          auto pts = coincidence_set(inst).points.size();
          auto nd = nielsen_data(inst);
          if (Integer(pts) != abs_value(det) || !nd || nd->nielsen_number != abs_value(det)) {
            ++sweep_fail;
            if (sweep_fail == 1) out << "FAIL oracle sweep at " << m.str() << "\n";
          }
        }
  out << "oracle sweep: " << sweep - sweep_fail << "/" << sweep << " passed\n";
  return failures + sweep_fail;
}

inline std::vector<Word> parse_words(const FpGroup& g, const std::string& text, const std::string& field) {
  try {
    return g.parse_word_list(text);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(field, e.what());
  }
}

inline FpGroup parse_presentation(const std::string& text) {
  try {
    return FpGroup::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("presentation", e.what());
  }
}

inline ElementMap element_map(const RealizedGroup& g, const std::string& text, const std::string& field) {
  std::vector<Word> words = parse_words(g.presentation, text, field);
  std::vector<FiniteGroupTable::Element> images;
  for (const auto& w : words) images.push_back(g.evaluate(w));
  try {
    auto phi = hom_from_generator_images(g, images);
    if (!phi) throw ValidationError(field, "generator images do not respect the relators");
    return *phi;
  } catch (const HomomorphismError& e) {
    throw ValidationError(field, e.what());
  }
}

inline void emit(std::ostream& out, const Json& j, bool text) {
  if (text && j.is_object()) {
    for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Nielsen coincidence invariants"};
  app.name("nck");
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* solve_cmd = app.add_subcommand("solve", "compute invariants for a problem file");
  std::string solve_path, batch_path;
  auto* path_opt = solve_cmd->add_option("file", solve_path, "problem JSON, or - for standard input");
  auto* batch_opt = solve_cmd->add_option("--batch", batch_path, "JSON array of problems");
  path_opt->excludes(batch_opt);
  std::size_t max_cosets = EngineOptions{}.max_cosets;
  solve_cmd->add_option("--max-cosets", max_cosets, "coset enumeration budget");

  auto* tables_cmd = app.add_subcommand("tables", "inspect the homotopy tables");
  tables_cmd->require_subcommand(1);
  auto* show_cmd = tables_cmd->add_subcommand("show", "print one table entry");
  std::vector<int> pi_mn, susp_mn, kerh_mn;
  auto* o_pi = show_cmd->add_option("--pi", pi_mn, "pi_m(S^n)")->expected(2);
  auto* o_su = show_cmd->add_option("--suspension", susp_mn, "E: pi_{m-1}(S^{n-1}) -> pi_m(S^n)")->expected(2);
  auto* o_kh = show_cmd->add_option("--kerh", kerh_mn, "ker h inside pi_{m-1}(S^{n-1})")->expected(2);
  show_cmd->require_option(1);
  o_pi->excludes(o_su)->excludes(o_kh);
  o_su->excludes(o_kh);

  auto* groups_cmd = app.add_subcommand("groups", "finitely presented group tools");
  groups_cmd->require_subcommand(1);
  std::string pres, subgroup, phi1, phi2;
  std::size_t group_budget = default_max_cosets;
  auto* index_cmd = groups_cmd->add_subcommand("index", "index of a subgroup");
  index_cmd->add_option("--presentation", pres)->required();
  index_cmd->add_option("--subgroup", subgroup, "comma-separated generating words")->required();
  index_cmd->add_option("--max-cosets", group_budget);
  auto* ab_cmd = groups_cmd->add_subcommand("abelianize", "abelianization");
  ab_cmd->add_option("--presentation", pres)->required();
  auto* rd_cmd = groups_cmd->add_subcommand("reidemeister", "twisted conjugacy classes of two endomorphisms");
  rd_cmd->add_option("--presentation", pres)->required();
  rd_cmd->add_option("--phi1", phi1, "generator images, comma-separated")->required();
  rd_cmd->add_option("--phi2", phi2, "generator images; default trivial");
  rd_cmd->add_option("--max-cosets", group_budget);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
  oracle_cmd->require_subcommand(1);
  auto* torus_cmd = oracle_cmd->add_subcommand("torus", "coincidences of linear torus maps");
  std::string mat_a, mat_b, trans;
  torus_cmd->add_option("--A", mat_a, "matrix \"a b; c d\"")->required();
  torus_cmd->add_option("--B", mat_b, "matrix \"a b; c d\"")->required();
  torus_cmd->add_option("--t", trans, "translation, e.g. \"1/2 0\"");

  auto* self_cmd = app.add_subcommand("selftest", "golden examples and oracle agreement");
  std::string golden_dir = default_golden_dir();
  self_cmd->add_option("--golden", golden_dir, "directory of golden files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return exit_invalid;
  }
  const bool text = format == "text";

  try {
    if (solve_cmd->parsed()) {
      const SphereTable& table = default_sphere_table();
      EngineOptions opts;
      opts.max_cosets = max_cosets;
      if (*batch_opt) {
        Json items = read_json(batch_path, in);
        if (!items.is_array()) throw ValidationError("$", "batch input must be a JSON array of problems");
        Json results = Json::array();
        int code = exit_ok;
        for (std::size_t i = 0; i < items.size(); ++i) {
          std::string path = "$[" + std::to_string(i) + "]";
          try {
            results.push_back(solve(problem_from_json(items[i], path), table, opts).to_json());
          } catch (const ValidationError& e) {
            results.push_back(Json{{"error", e.what()}});
            code = std::max(code, exit_invalid);
          }
        }
        if (text) {
          for (std::size_t i = 0; i < results.size(); ++i) {
            out << "[" << i << "]\n";
            if (results[i].contains("error"))
              out << "error: " << results[i]["error"].get<std::string>() << "\n";
            else
              out << InvariantReport::from_json(results[i]).text();
          }
        } else {
          out << results.dump(2) << "\n";
        }
        return code;
      }
      if (!*path_opt) throw ValidationError("input", "give a problem file, - or --batch <file>");
      InvariantReport r = solve(problem_from_json(read_json(solve_path, in)), table, opts);
      out << (text ? r.text() : r.to_json().dump(2) + "\n");
      return exit_ok;
    }

    if (tables_cmd->parsed()) {
      const SphereTable& table = default_sphere_table();
      Json j = *o_pi ? table.group_json(pi_mn[0], pi_mn[1])
               : *o_su ? table.suspension_json(susp_mn[0], susp_mn[1])
                       : table.kernel_json(kerh_mn[0], kerh_mn[1]);
      j["table_version"] = table.version();
      emit(out, j, text);
      return exit_ok;
    }

    if (groups_cmd->parsed()) {
      FpGroup g = parse_presentation(pres);
      Json j;
      if (index_cmd->parsed()) {
        IndexResult r = subgroup_index(g, parse_words(g, subgroup, "subgroup"), group_budget);
        j["index"] = r.is_finite()     ? Json{{"finite", integer_to_json(r.value())}}
                     : r.is_infinite() ? Json("infinite")
                                       : Json{{"unknown", r.reason()}};
      } else if (ab_cmd->parsed()) {
        FgAbGroup ab = abelianization(g);
        j["group"] = group_to_json(ab);
        j["name"] = ab.str();
      } else {
        auto realized = realize_finite(g, group_budget);
        if (auto* u = std::get_if<Unknown>(&realized)) {
          j["reidemeister"] = Json{{"unknown", u->reason}};
        } else {
          const auto& rg = std::get<RealizedGroup>(realized);
          ElementMap m1 = element_map(rg, phi1, "phi1");
          ElementMap m2 = phi2.empty() ? trivial_map(rg.table) : element_map(rg, phi2, "phi2");
          j["order"] = rg.table.order();
          j["reidemeister"] = Json{{"finite", reidemeister_count(rg.table, m1, m2)}};
        }
      }
      emit(out, j, text);
      return exit_ok;
    }

    if (torus_cmd->parsed()) {
      TorusInstance inst;
      try {
        inst.A = IntMatrix::parse(mat_a);
      } catch (const std::invalid_argument& e) {
        throw ValidationError("A", e.what());
      }
      try {
        inst.B = IntMatrix::parse(mat_b);
      } catch (const std::invalid_argument& e) {
        throw ValidationError("B", e.what());
      }
      std::istringstream ts(trans);
      for (std::string tok; ts >> tok;) inst.translation.push_back(parse_rational(tok, "t"));
      emit(out, torus_report_json(inst), text);
      return exit_ok;
    }

    if (self_cmd->parsed()) {
      int failures = selftest(default_sphere_table(), golden_dir, out);
      out << (failures == 0 ? "selftest: pass\n" : "selftest: FAIL\n");
      return failures == 0 ? exit_ok : exit_failure;
    }
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << "\n";
    return exit_internal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_failure;
}

}  // namespace nck::cli
