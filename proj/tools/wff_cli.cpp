// wff: command-line front end for weighted Fourier frames on self-affine
// measures.
//
//   wff validate   CONFIG
//   wff minsets    CONFIG [--dot DIR]
//   wff cyclewords CONFIG [--point P] [--max-len N]
//   wff frame      CONFIG [--depth N] [--format csv|json]
//   wff verify     CONFIG [--depth N] [--terms K] [--points LIST]
//   wff theory     CONFIG [--generate-b R]
//
// Exit codes: 0 success, 1 the system failed validation (or the command does
// not apply to it), 2 unreadable or malformed input.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wff/io.hpp"
#include "wff/wff.hpp"

namespace {

using nlohmann::json;
using namespace wff;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string config;
  std::optional<std::size_t> depth;
  std::optional<int> terms;
  std::string dot_dir;
  std::string points;
  std::string point;
  std::size_t max_len = kDefaultMaxWordLength;
  std::string format = "csv";
  int generate_r = 0;
  bool force = false;
};

/// "0,-1,1/2,0.37": fractions are parsed exactly, decimals with stod.
std::vector<double> parse_points(const std::string& list) {
  std::vector<double> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    if (item.find_first_of(".eE") != std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw io::ConfigError("bad point: " + item);
      out.push_back(v);
    } else {
      try {
        out.push_back(to_double(parse_rational(item)));
      } catch (const std::invalid_argument&) {
        throw io::ConfigError("bad point: " + item);
      }
    }
  }
  return out;
}

/// Min-sets, honoring --force for systems that fail validation.
std::optional<std::vector<MinSet>> min_sets_for(const FrameSystem& sys, bool force) {
  const auto report = validate(sys);
  if (!report.passed && !force) {
    std::cerr << "error: " << ValidationError(report).what() << " (use --force to continue)\n";
    return std::nullopt;
  }
  return find_min_sets_unchecked(sys);
}

int cmd_validate(const io::Config& cfg) {
  const auto report = validate(cfg.system);
  std::cout << io::to_json(report).dump(2) << '\n';
  return report.passed ? kExitOk : kExitInvalid;
}

int cmd_minsets(const io::Config& cfg, const Options& opt) {
  const auto sets = min_sets_for(cfg.system, opt.force);
  if (!sets) return kExitInvalid;
  if (!opt.dot_dir.empty()) {
    std::filesystem::create_directories(opt.dot_dir);
    for (std::size_t i = 0; i < sets->size(); ++i) {
      const auto path = std::filesystem::path(opt.dot_dir) / ("minset_" + std::to_string(i) + ".dot");
      std::ofstream(path) << export_dot((*sets)[i]);
    }
  }
  std::cout << io::min_sets_to_json(*sets).dump(2) << '\n';
  return kExitOk;
}

int cmd_cyclewords(const io::Config& cfg, const Options& opt) {
  const auto sets = min_sets_for(cfg.system, opt.force);
  if (!sets) return kExitInvalid;
  std::optional<Rational> only;
  if (!opt.point.empty()) {
    only = parse_rational(opt.point);
    min_set_containing(*sets, *only);  // throws when not a min-set point
  }
  json out = json::array();
  for (const auto& m : *sets)
    for (const auto& c : m.points) {
      if (only && c != *only) continue;
      json words = json::array();
      for (const auto& w : cycle_words(cfg.system, m, c, opt.max_len)) words.push_back(w.digits);
      out.push_back({{"point", to_string(c)},
                     {"representative", to_string(m.representative)},
                     {"max_len", opt.max_len},
                     {"cycle_words", words},
                     {"weight_sum", cycle_word_weight_sum(cfg.system, m, c, opt.max_len)}});
    }
  std::cout << json{{"version", io::kSchemaVersion}, {"points", out}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_frame(const io::Config& cfg, const Options& opt) {
  const auto sets = min_sets_for(cfg.system, opt.force);
  if (!sets) return kExitInvalid;
  const auto elements = frame_multiset(cfg.system, *sets, opt.depth.value_or(cfg.depth));
  if (opt.format == "json") {
    std::cout << io::frame_to_json(elements).dump(2) << '\n';
  } else {
    std::cout << io::frame_to_csv(elements);
  }
  return kExitOk;
}

int cmd_verify(const io::Config& cfg, const Options& opt) {
  const FrameSystem& sys = cfg.system;
  const auto sets = min_sets_for(sys, opt.force);
  if (!sets) return kExitInvalid;
  const std::size_t depth = opt.depth.value_or(cfg.depth);
  const int terms = opt.terms.value_or(cfg.terms);
  const auto points = opt.points.empty() ? std::vector<double>{0.0} : parse_points(opt.points);

  json report{{"version", io::kSchemaVersion},
              {"depth", depth},
              {"terms", terms},
              {"validation_passed", validate(sys).passed}};

  json transfer = json::array();
  for (double t : points) {
    const double v = transfer_normalization(sys, t);
    transfer.push_back({{"t", t}, {"value", v}, {"residual", std::abs(v - 1.0)}});
  }
  double grid_worst = 0.0;
  for (int i = 0; i <= 200; ++i) grid_worst = std::max(grid_worst, std::abs(transfer_normalization(sys, -10.0 + 0.1 * i) - 1.0));
  report["transfer_normalization"] = {{"points", transfer}, {"grid_max_residual", grid_worst}};

  const auto ortho = cycle_orthogonality_matrix(sys, *sets, terms);
  json labels = json::array();
  for (const auto& p : ortho.points) labels.push_back(to_string(p));
  report["cycle_orthogonality"] = {
      {"points", labels}, {"matrix", ortho.entries}, {"max_off_diagonal", ortho.max_off_diagonal()}};

  json markov = json::array();
  for (const auto& m : *sets) {
    json cycles = json::array();
    json passages = json::array();
    for (const auto& c : m.points) {
      cycles.push_back({{"c", to_string(c)}, {"sum", cycle_word_weight_sum(sys, m, c, depth)}});
      for (const auto& cp : m.points)
        if (cp != c)
          passages.push_back(
              {{"from", to_string(c)}, {"to", to_string(cp)}, {"sum", first_passage_weight_sum(sys, m, c, cp, depth)}});
    }
    markov.push_back(
        {{"representative", to_string(m.representative)}, {"cycle_word_sums", cycles}, {"first_passage_sums", passages}});
  }
  report["markov"] = markov;

  json parseval = json::array();
  for (double t : points) {
    const auto r = parseval_defect(sys, *sets, t, depth, terms);
    parseval.push_back({{"t", t},
                        {"partial_sum", r.partial_sum},
                        {"defect", r.defect},
                        {"within_tolerance", r.defect < cfg.parseval_tolerance}});
  }
  report["parseval"] = parseval;
  report["parseval_tolerance"] = cfg.parseval_tolerance;

  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_theory(const io::Config& cfg, const Options& opt) {
  const FrameSystem& sys = cfg.system;
  json report{{"version", io::kSchemaVersion}};
  if (opt.generate_r > 0) {
    json gen = json::array();
    for (const auto& g : theory::cor47_generate_b(opt.generate_r)) gen.push_back({{"b", g.b}, {"j", g.digits}});
    report["generated_b"] = gen;
  }
  if (!theory::is_cantor4(sys)) {
    std::cerr << "error: theory checks apply only to R = 4, B = {0, 2}\n";
    return kExitInvalid;
  }
  const auto sets = min_sets_for(sys, opt.force);
  if (!sets) return kExitInvalid;

  report["prop42_no_nontrivial"] = theory::prop42_no_nontrivial(sys);
  std::vector<Int> nonzero;
  for (Int l : sys.L())
    if (l != 0) nonzero.push_back(l);
  const bool three_digits = nonzero.size() == 2;
  if (three_digits && mod_floor(nonzero[0] - nonzero[1], 4) == 0)
    report["prop43_necessary"] = theory::prop43_necessary(nonzero[0], nonzero[1]);
  const bool has_three = std::find(nonzero.begin(), nonzero.end(), Int{3}) != nonzero.end();

  json sets_json = json::array();
  for (const auto& m : *sets) {
    json pts = json::array();
    for (const auto& x : m.points) {
      json entry{{"point", to_string(x)}};
      if (m.nontrivial() && has_three && three_digits && is_integer(x)) {
        const auto form = theory::cor47_form_check(numerator(x).convert_to<Int>());
        entry["cor47_form"] = form ? json{{"n", form->n}, {"digits", form->digits}} : json(nullptr);
      }
      if (m.nontrivial() && three_digits) {
        json decs = json::array();
        for (Int a : nonzero) {
          const std::vector<Int> sub{0, a};
          try {
            const auto d = theory::thm46_decompose(sys, x, sub);
            decs.push_back({{"sub_digits", sub},
                            {"c", to_string(d.c)},
                            {"digits", d.digits.digits},
                            {"n", d.n},
                            {"identity_holds", theory::recompose(d) == x}});
          } catch (const std::domain_error& e) {
            decs.push_back({{"sub_digits", sub}, {"error", e.what()}});
          }
        }
        entry["thm46"] = decs;
      }
      pts.push_back(entry);
    }
    sets_json.push_back({{"representative", to_string(m.representative)}, {"points", pts}});
  }
  report["min_sets"] = sets_json;
  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Fourier frames on self-affine measures"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opt.config, "JSON configuration file")->required();
    sub->add_flag("--force", opt.force, "run even if the system fails validation");
  };
  auto* validate_cmd = app.add_subcommand("validate", "check the admissibility assumptions");
  add_common(validate_cmd);
  auto* minsets_cmd = app.add_subcommand("minsets", "list min-sets as JSON");
  add_common(minsets_cmd);
  minsets_cmd->add_option("--dot", opt.dot_dir, "write one DOT file per min-set into DIR");
  auto* cycle_cmd = app.add_subcommand("cyclewords", "cycle words of min-set points");
  add_common(cycle_cmd);
  cycle_cmd->add_option("--point", opt.point, "restrict to one point (p or p/q)");
  cycle_cmd->add_option("--max-len", opt.max_len, "maximum word length")->capture_default_str();
  auto* frame_cmd = app.add_subcommand("frame", "emit the frame multiset");
  add_common(frame_cmd);
  frame_cmd->add_option("--depth", opt.depth, "maximum word length (default 12)");
  frame_cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  auto* verify_cmd = app.add_subcommand("verify", "numerical identity report");
  add_common(verify_cmd);
  verify_cmd->add_option("--depth", opt.depth, "maximum word length (default 12)");
  verify_cmd->add_option("--terms", opt.terms, "product terms K (default 64)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--points", opt.points, "comma separated evaluation points");
  auto* theory_cmd = app.add_subcommand("theory", "structural checks for R = 4, B = {0, 2}");
  add_common(theory_cmd);
  theory_cmd->add_option("--generate-b", opt.generate_r, "also list the admissible b for this r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const io::Config cfg = io::load_config(opt.config);
    if (validate_cmd->parsed()) return cmd_validate(cfg);
    if (minsets_cmd->parsed()) return cmd_minsets(cfg, opt);
    if (cycle_cmd->parsed()) return cmd_cyclewords(cfg, opt);
    if (frame_cmd->parsed()) return cmd_frame(cfg, opt);
    if (verify_cmd->parsed()) return cmd_verify(cfg, opt);
    if (theory_cmd->parsed()) return cmd_theory(cfg, opt);
  } catch (const io::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInput;
}
