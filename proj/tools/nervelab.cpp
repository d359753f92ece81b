// nervelab: command-line front end.
//
// Exit codes: 0 success, 1 predicate failure (witness JSON on stdout),
// 2 schema or input error, 3 bounded search exhausted.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "nervelab/dimension.hpp"
#include "nervelab/io.hpp"
#include "nervelab/selftest.hpp"

namespace {

using namespace nervelab;
using io::Json;

struct InputError {
  std::string message;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw InputError{"cannot open " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs a loader; library errors raised while reading become input errors.
template <class F>
auto load(const std::string& path, F reader) {
  try {
    return reader(io::parse(read_text(path)));
  } catch (const Error& e) {
    throw InputError{path + ": " + e.what()};
  }
}

CoverSequence load_cover(const std::string& path) {
  return load(path, [](const Json& j) { return io::cover_from_json(j); });
}

Kappa parse_kappa(const std::string& text) {
  if (text.empty() || text == "omega") return Kappa::omega();
  try {
    std::size_t used = 0;
    const int k = std::stoi(text, &used);
    if (used == text.size() && k > 0) return Kappa::finite(k);
  } catch (const std::exception&) {
  }
  throw InputError{"--kappa: expected a positive integer or \"omega\", got \"" + text + "\""};
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError{"cannot write " + path};
    out << text;
  }
};

int emit_verdict(const Output& out, Json j, bool ok) {
  out.write(io::dump(std::move(j)));
  return ok ? 0 : 1;
}

struct Options {
  std::string cover;
  std::string second;
  std::string kappa;
  std::string format = "json";
  std::string target = "nerve";
  std::string mode;
  int level = -1;
  int max_level = 2;
  int n = -1;
  int steps = 3;
  bool unindexed = false;
  bool serial = false;
};

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nerves, Δ-complexes and C-refinements of star-set cover sequences"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  Output out;
  app.add_option("--out", out.path, "Write the result to PATH instead of stdout");

  auto* complex_cmd = app.add_subcommand("complex", "Describe a complex or one of its subdivision stages");
  complex_cmd->add_option("input", o.cover, "Complex JSON (or a cover/mapping JSON with a \"space\")")->required();
  complex_cmd->add_option("--level", o.level, "Subdivision level")->check(CLI::Range(0, 12));
  add_format(complex_cmd, o);

  auto* nerve_cmd = app.add_subcommand("nerve", "Indexed nerve of the first kappa levels");
  nerve_cmd->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  nerve_cmd->add_option("--kappa", o.kappa, "Prefix length (default: all levels)");
  add_format(nerve_cmd, o);

  auto* delta_cmd = app.add_subcommand("delta", "Δ-subcomplex of the first kappa levels");
  delta_cmd->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  delta_cmd->add_option("--kappa", o.kappa, "Prefix length (default: all levels)");
  delta_cmd->add_flag("--unindexed", o.unindexed, "Collapse equal sets from different levels");
  add_format(delta_cmd, o);

  auto* canonical_cmd = app.add_subcommand("canonical", "Canonical maps into nerves");
  canonical_cmd->require_subcommand(1);
  auto* canonical_build = canonical_cmd->add_subcommand("build", "Build a canonical map");
  canonical_build->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  canonical_build->add_option("--kappa", o.kappa);
  canonical_build->add_option("--target", o.target)->check(CLI::IsMember({"nerve", "delta"}));
  canonical_build->add_option("--level", o.level, "Subdivision level of the source (default: working level)");
  auto* canonical_check = canonical_cmd->add_subcommand("check", "Check the canonical-map condition");
  canonical_check->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  canonical_check->add_option("map", o.second)->required();
  canonical_check->add_option("--kappa", o.kappa);

  auto* selection_cmd = app.add_subcommand("selection", "Selection predicates");
  selection_cmd->require_subcommand(1);
  auto* selection_check = selection_cmd->add_subcommand("check", "Check the selection condition of a canonical map");
  selection_check->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  selection_check->add_option("map", o.second)->required();
  selection_check->add_option("--kappa", o.kappa);
  auto* selection_vertex = selection_cmd->add_subcommand("vertex", "Vertex selection of a mapping sequence");
  selection_vertex->add_option("mapping", o.cover)->required();
  auto* selection_skeletal = selection_cmd->add_subcommand("skeletal", "Iterated skeletal extension by the cone witness");
  selection_skeletal->add_option("mapping", o.cover)->required();
  selection_skeletal->add_option("--steps", o.steps)->check(CLI::Range(0, 8));

  auto* crefine_cmd = app.add_subcommand("crefine", "C-refinements");
  crefine_cmd->require_subcommand(1);
  auto* crefine_construct = crefine_cmd->add_subcommand("construct", "Barycenter construction, kappa = n+1");
  crefine_construct->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  crefine_construct->add_option("--n", o.n, "Target dimension bound (default: dim)")->check(CLI::Range(0, 16));
  auto* crefine_search = crefine_cmd->add_subcommand("search", "Bounded exhaustive search");
  crefine_search->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  crefine_search->add_option("--kappa", o.kappa)->required();
  crefine_search->add_option("--max-level", o.max_level)->check(CLI::Range(0, 6));
  crefine_search->add_flag("--serial", o.serial, "Use the single-threaded search");
  auto* crefine_verify = crefine_cmd->add_subcommand("verify", "Verify a C-refinement of a cover");
  crefine_verify->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  crefine_verify->add_option("refinement", o.second)->required();
  auto* crefine_extract = crefine_cmd->add_subcommand("extract", "Preimage families of a canonical map");
  crefine_extract->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  crefine_extract->add_option("map", o.second)->required();
  crefine_extract->add_option("--kappa", o.kappa);

  auto* dim_cmd = app.add_subcommand("dim", "Dimension of the ground complex");
  dim_cmd->add_option("input", o.cover)->required();

  auto* cone_cmd = app.add_subcommand("cone-extend", "Extend a map over a cone by a witness vertex");
  cone_cmd->add_option("input", o.cover)->required();

  auto* mu_cmd = app.add_subcommand("mu-driver", "C-refinement and canonical-map round trip for a mode");
  mu_cmd->add_option("cover,--cover", o.cover, "Cover sequence JSON")->required();
  mu_cmd->add_option("--mode,--mu", o.mode, "c | finite-c | dim:<n>")->required();
  mu_cmd->add_option("--max-level", o.max_level)->check(CLI::Range(0, 6));

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the fixture corpus");
  std::string selftest_format = "text";
  selftest_cmd->add_option("--format", selftest_format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bool dot = o.format == "dot";

    if (*complex_cmd) {
      const auto base = load(o.cover, [](const Json& j) {
        return j.contains("space") ? io::complex_from_json(j.at("space"), "$.space") : io::complex_from_json(j);
      });
      const PolyhedralSpace space(base);
      const int level = std::max(o.level, 0);
      const auto& c = space.stage(level).complex;
      if (dot) {
        out.write(io::complex_to_dot(c, "stage" + std::to_string(level)));
      } else {
        Json j = Json::object();
        j["level"] = level;
        j["complex"] = io::complex_to_json(c);
        out.write(io::dump(std::move(j)));
      }
      return 0;
    }

    if (*nerve_cmd || *delta_cmd) {
      const auto cs = load_cover(o.cover);
      const auto kappa = parse_kappa(o.kappa);
      const int k = kappa.resolve(cs.level_count());
      const std::string name = std::string(*nerve_cmd ? "nerve" : "delta") + "_kappa" + std::to_string(k);
      if (*delta_cmd && o.unindexed) {
        const auto c = unindexed_delta(cs, kappa);
        if (dot) {
          out.write(io::complex_to_dot(c, name + "_unindexed"));
        } else {
          Json j = Json::object();
          j["kappa"] = k;
          j["unindexed"] = true;
          j["complex"] = io::named_complex_to_json(c);
          out.write(io::dump(std::move(j)));
        }
        return 0;
      }
      const auto c = *nerve_cmd ? nerve(cs, kappa).complex : delta_subcomplex(cs, kappa).complex;
      if (dot) {
        out.write(io::nerve_to_dot(c, name));
      } else {
        Json j = Json::object();
        j["kappa"] = k;
        j["kind"] = *nerve_cmd ? "nerve" : "delta";
        j["complex"] = io::nerve_to_json(c);
        out.write(io::dump(std::move(j)));
      }
      return 0;
    }

    if (*canonical_build) {
      const auto cs = load_cover(o.cover);
      const auto kappa = parse_kappa(o.kappa);
      const auto kind = o.target == "delta" ? TargetKind::delta : TargetKind::nerve;
      std::optional<int> level;
      if (o.level >= 0) level = o.level;
      const auto f = build_canonical(cs, kappa, kind, level);
      out.write(io::dump(io::canonical_to_json(f, kappa.resolve(cs.level_count()), kind)));
      return 0;
    }

    if (*canonical_check || *selection_check || *crefine_extract) {
      const auto cs = load_cover(o.cover);
      const auto f = load(o.second, [&](const Json& j) { return io::canonical_from_json(j, cs); });
      Kappa kappa = parse_kappa(o.kappa);
      if (o.kappa.empty()) {
        const auto j = io::parse(read_text(o.second));
        if (j.contains("kappa")) kappa = Kappa::finite(j.at("kappa").get<int>());
      }
      if (*crefine_extract) {
        const auto v = check_canonical(f, cs, kappa);
        if (!v.ok) return emit_verdict(out, io::verdict_to_json(v), false);
        out.write(io::dump(io::crefinement_to_json(extract_c_refinement(f, cs, kappa))));
        return 0;
      }
      const auto v = *canonical_check ? check_canonical(f, cs, kappa) : check_selection(f, cs, kappa);
      return emit_verdict(out, io::verdict_to_json(v), v.ok);
    }

    if (*selection_vertex || *selection_skeletal) {
      const auto phi = load(o.cover, [](const Json& j) { return io::mapping_from_json(j); });
      const auto s = vertex_selection(phi);
      const auto v = check_vertex_selection(s, phi);
      if (*selection_vertex) {
        Json j = io::vertex_selection_to_json(s);
        j["check"] = io::verdict_to_json(v);
        return emit_verdict(out, std::move(j), v.ok);
      }
      auto f = lift_to_delta(s, phi);
      Json steps = Json::array();
      bool ok = v.ok;
      for (int step = 0; step <= o.steps; ++step) {
        if (step > 0) f = extend_skeletal_selection(f, phi);
        const auto skeletal = check_skeletal_selection(f, phi);
        const auto whole = check_union_selection(f, phi);
        ok = ok && skeletal.ok && whole.ok;
        Json entry = Json::object();
        entry["levels"] = f.cs.level_count();
        entry["skeletal"] = io::verdict_to_json(skeletal);
        entry["delta_image"] = io::verdict_to_json(whole);
        steps.push_back(std::move(entry));
      }
      Json j = Json::object();
      j["ok"] = ok;
      j["vertex_selection"] = io::verdict_to_json(v);
      j["steps"] = std::move(steps);
      j["selection"] = io::skeletal_to_json(f);
      return emit_verdict(out, std::move(j), ok);
    }

    if (*crefine_construct) {
      const auto cs = load_cover(o.cover);
      const int n = o.n >= 0 ? o.n : cs.space().dim();
      out.write(io::dump(io::crefinement_to_json(ostrand_refine(cs, n))));
      return 0;
    }

    if (*crefine_search) {
      const auto cs = load_cover(o.cover);
      const auto kappa = parse_kappa(o.kappa);
      if (kappa.is_omega()) throw InputError{"--kappa: the search needs a finite kappa"};
      const auto r = search_c_refinement(cs, kappa.value(), o.max_level,
                                         o.serial ? SearchBackend::serial : SearchBackend::parallel);
      out.write(io::dump(io::search_to_json(r, kappa.value(), o.max_level)));
      return r.found() ? 0 : 3;
    }

    if (*crefine_verify) {
      const auto cs = load_cover(o.cover);
      const auto r = load(o.second, [&](const Json& j) { return io::crefinement_from_json(j, cs); });
      const auto v = verify_c_refinement(r);
      return emit_verdict(out, io::verdict_to_json(v), v.ok);
    }

    if (*dim_cmd) {
      const auto base = load(o.cover, [](const Json& j) {
        return j.contains("space") ? io::complex_from_json(j.at("space"), "$.space") : io::complex_from_json(j);
      });
      Json j = Json::object();
      j["dim"] = dim_oracle(PolyhedralSpace(base));
      out.write(io::dump(std::move(j)));
      return 0;
    }

    if (*cone_cmd) {
      const auto in = load(o.cover, [](const Json& j) { return io::cone_input_from_json(j); });
      const auto h = cone_extend(in.g, in.apex, in.witness, in.chain);
      const auto v = check_skeleton_images(h, in.chain);
      Json j = Json::object();
      j["map"] = io::simplicial_map_to_json(h);
      j["check"] = io::verdict_to_json(v);
      return emit_verdict(out, std::move(j), v.ok);
    }

    if (*mu_cmd) {
      const auto cs = load_cover(o.cover);
      MuMode mode;
      try {
        mode = MuMode::parse(o.mode);
      } catch (const Error& e) {
        throw InputError{std::string("--mode: ") + e.what()};
      }
      const auto report = mu_driver(cs, mode, o.max_level);
      out.write(io::dump(io::mu_report_to_json(report)));
      if (report.success) return 0;
      return report.refinement ? 1 : 3;
    }

    if (*selftest_cmd) {
      const auto rows = run_selftest();
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.failed == 0 && r.passed > 0;
      if (selftest_format == "json") {
        Json j = Json::object();
        j["ok"] = ok;
        j["rows"] = Json::array();
        for (const auto& r : rows) {
          Json row = Json::object();
          row["property"] = r.property;
          row["passed"] = r.passed;
          row["failed"] = r.failed;
          j["rows"].push_back(std::move(row));
        }
        out.write(io::dump(std::move(j)));
      } else {
        std::ostringstream os;
        for (const auto& r : rows)
          os << (r.failed == 0 && r.passed > 0 ? "PASS  " : "FAIL  ") << r.property << "  (" << r.passed << " passed, "
             << r.failed << " failed)\n";
        out.write(os.str());
      }
      return ok ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    Json j = Json::object();
    j["ok"] = false;
    j["error"] = Json::object();
    j["error"]["code"] = std::string(errc_name(e.code()));
    j["error"]["message"] = e.what();
    out.write(io::dump(std::move(j)));
    return 1;
  }
  return 0;
}
