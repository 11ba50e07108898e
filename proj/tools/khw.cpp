#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "khw/diagram.hpp"
#include "khw/error.hpp"
#include "khw/goeritz.hpp"
#include "khw/khovanov.hpp"
#include "khw/obstruct.hpp"
#include "khw/tangle.hpp"

#ifndef KHW_CORPUS_DIR
#define KHW_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;
using namespace khw;

namespace {

struct RunConfig {
  std::string input;
  std::string slope;
  std::string backend = "scan";
  std::string window;
  std::string mode = "lens";
  std::string format = "grid";
  long capacity = 0;  // 0: backend default or KHW_CAPACITY
  bool raw_framing = false;
  bool verbose = false;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// corpus:NAME looks for NAME<ext> in $KHW_CORPUS_DIR or the bundled corpus.
fs::path resolve_input(const std::string& input, const std::string& ext) {
  const std::string prefix = "corpus:";
  if (input.rfind(prefix, 0) != 0) return input;
  const char* env = std::getenv("KHW_CORPUS_DIR");
  const fs::path dir = env && *env ? fs::path(env) : fs::path(KHW_CORPUS_DIR);
  const fs::path p = dir / (input.substr(prefix.size()) + ext);
  if (!fs::exists(p)) throw ParseError("no corpus entry " + p.string());
  return p;
}

KhOptions kh_options(const RunConfig& cfg) {
  KhOptions opt;
  if (cfg.backend == "naive")
    opt.backend = Backend::naive;
  else if (cfg.backend != "scan")
    throw ParseError("unknown backend '" + cfg.backend + "' (expected naive or scan)");
  long cap = cfg.capacity;
  if (cap == 0)
    if (const char* env = std::getenv("KHW_CAPACITY"); env && *env) {
      try {
        cap = std::stol(env);
      } catch (const std::exception&) {
        throw ParseError(std::string("KHW_CAPACITY is not an integer: ") + env);
      }
    }
  if (cap < 0) throw ParseError("capacity must be at least 1");
  if (cap > 0) {
    opt.naive_capacity = static_cast<int>(std::min<long>(cap, 1 << 20));
    opt.scan_capacity = cap;
  }
  return opt;
}

PlanarDiagram load_diagram(const RunConfig& cfg) {
  auto d = parse_diagram(read_file(resolve_input(cfg.input, ".pd")));
  validate(d);
  return d;
}

Tangle load_tangle(const RunConfig& cfg) {
  Tangle t = parse_tangle(read_file(resolve_input(cfg.input, ".tangle")));
  validate(t);
  if (cfg.raw_framing) return t;
  const auto cal = calibrate(t);
  if (!cal.ok) {
    std::cerr << "warning: calibration failed (" << cal.reason << "); using the file framing\n";
    return t;
  }
  if (cfg.verbose) std::cerr << "calibrated framing offset " << cal.offset << "\n";
  Tangle out = cal.offset == 0 ? t : twist(t, cal.offset);
  out.name = t.name;
  out.provenance = t.provenance;
  out.system = t.system;
  return out;
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions opt;
  opt.kh = kh_options(cfg);
  if (!cfg.window.empty()) {
    const auto dots = cfg.window.find("..");
    if (dots == std::string::npos) throw ParseError("window must be written a..b");
    try {
      opt.lo = std::stoi(cfg.window.substr(0, dots));
      opt.hi = std::stoi(cfg.window.substr(dots + 2));
    } catch (const std::exception&) {
      throw ParseError("window must be written a..b");
    }
    if (opt.lo > opt.hi) throw ParseError("window a..b needs a <= b");
  }
  return opt;
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "grid" && cfg.format != "json")
    throw ParseError("unknown format '" + cfg.format + "' (expected grid or json)");
}

int cmd_kh(const RunConfig& cfg) {
  const auto d = load_diagram(cfg);
  const auto r = reduced_kh(orient(d), kh_options(cfg));
  if (cfg.format == "json") {
    std::cout << to_json(r) << "\n";
    return 0;
  }
  const auto w = width(r);
  if (!d.label.empty()) std::cout << d.label << "\n";
  std::cout << to_grid(r) << "rank " << r.total() << ", width " << w.width << "\n";
  return 0;
}

int cmd_tau(const RunConfig& cfg) {
  const Tangle t = load_tangle(cfg);
  auto d = tau(t, parse_slope(cfg.slope));
  std::cout << write_pd(d);
  return 0;
}

void print_summary(const StabilityReport& rep) {
  std::cout << "tangle " << rep.name << ", window [" << rep.lo << ", " << rep.hi << "]\n";
  std::cout << "w_min " << rep.w_min << ", w_max " << rep.w_max << ", "
            << to_string(rep.genericity);
  if (rep.ell) std::cout << " at ell = " << *rep.ell << " (adjacent rank " << rep.adjacent_rank << ")";
  std::cout << "\n";
  std::cout << "tails: +inf grows on diagonal " << rep.plus.diagonal << " (" << rep.plus.steps
            << " steps), -inf on " << rep.minus.diagonal << " (" << rep.minus.steps
            << " steps); " << (rep.stabilized ? "stabilised" : "not stabilised") << "\n";
  for (const auto& note : rep.notes) std::cout << "note: " << note << "\n";
}

int cmd_scan(const RunConfig& cfg) {
  const auto rep = scan_integers(load_tangle(cfg), scan_options(cfg));
  if (cfg.format == "json") {
    std::cout << to_json(rep) << "\n";
    return 0;
  }
  print_summary(rep);
  std::cout << "\n" << report_grids(rep);
  return 0;
}

int cmd_obstruct(const RunConfig& cfg) {
  const Mode mode = parse_mode(cfg.mode);
  const auto rep = scan_integers(load_tangle(cfg), scan_options(cfg));
  const auto verdicts = obstruct_all(rep, mode);
  if (cfg.format == "json") {
    std::cout << to_json(verdicts, mode) << "\n";
    return 0;
  }
  print_summary(rep);
  std::cout << "mode " << to_string(mode) << "\n";
  for (const auto& v : verdicts) std::cout << to_string(v) << "\n";
  return 0;
}

int cmd_goeritz(const RunConfig& cfg) {
  const auto d = load_diagram(cfg);
  const long det = determinant(d);
  const int sig = signature(orient(d));
  if (cfg.format == "json")
    std::cout << "{\"det\": " << det << ", \"signature\": " << sig << "}\n";
  else
    std::cout << "det " << det << "\nsignature " << sig << "\n";
  return 0;
}

int cmd_jones(const RunConfig& cfg) {
  const auto d = load_diagram(cfg);
  const auto v = jones(reduced_kh(orient(d), kh_options(cfg)));
  std::ostringstream poly;
  bool first = true;
  for (auto [e, c] : v.coeff) {
    if (c == 0) continue;
    poly << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) << std::labs(c);
    if (e % 2 == 0)
      poly << " t^" << e / 2;
    else
      poly << " t^(" << e << "/2)";
    first = false;
  }
  if (first) poly << "0";
  const long at = abs_at_minus_one(v);
  if (cfg.format == "json")
    std::cout << "{\"polynomial\": \"" << poly.str() << "\", \"abs_at_minus_one\": " << at << "}\n";
  else
    std::cout << "V(t) = " << poly.str() << "\n|V(-1)| = " << at << "\n";
  return 0;
}

int cmd_unknot(const RunConfig& cfg) {
  const auto rep = scan_integers(load_tangle(cfg), scan_options(cfg));
  const auto cert = unknot_certificate(rep);
  if (cfg.format == "json")
    std::cout << to_json(cert) << "\n";
  else
    std::cout << to_string(cert.verdict) << "\n" << cert.reason << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced Khovanov homology, tangle fillings and width obstructions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool kh) {
    sub->add_option("input", cfg.input, "file path or corpus:NAME")->required();
    sub->add_option("--format", cfg.format, "grid or json");
    sub->add_flag("-v,--verbose", cfg.verbose, "progress notes on stderr");
    if (kh) {
      sub->add_option("--backend", cfg.backend, "naive or scan");
      sub->add_option("--capacity", cfg.capacity,
                      "naive: max crossings; scan: max live objects (default $KHW_CAPACITY)");
    }
  };
  auto tangle_opts = [&](CLI::App* sub) {
    sub->add_flag("--raw-framing", cfg.raw_framing, "skip calibration of the framing");
  };

  auto* kh = app.add_subcommand("kh", "reduced Khovanov homology of a diagram");
  common(kh, true);
  auto* tau_cmd = app.add_subcommand("tau", "the filling tau(p/q) of a tangle as a PD code");
  common(tau_cmd, false);
  tau_cmd->add_option("slope", cfg.slope, "p/q, n or 1/0")->required();
  tangle_opts(tau_cmd);
  auto* scan = app.add_subcommand("scan", "stability report over integer fillings");
  common(scan, true);
  scan->add_option("--window", cfg.window, "a..b, default -6..6 with auto-widening");
  tangle_opts(scan);
  auto* obs = app.add_subcommand("obstruct", "width verdicts for lens or finite fillings");
  common(obs, true);
  obs->add_option("--window", cfg.window, "a..b, default -6..6 with auto-widening");
  obs->add_option("--mode", cfg.mode, "lens or finite");
  tangle_opts(obs);
  auto* goe = app.add_subcommand("goeritz", "determinant and signature");
  common(goe, false);
  auto* jon = app.add_subcommand("jones", "Jones polynomial from the reduced ranks");
  common(jon, true);
  auto* unk = app.add_subcommand("unknot-check", "compare fillings with the trivial tangle");
  common(unk, true);
  unk->add_option("--window", cfg.window, "a..b, default -6..6 with auto-widening");
  tangle_opts(unk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    check_format(cfg);
    if (kh->parsed()) return cmd_kh(cfg);
    if (tau_cmd->parsed()) return cmd_tau(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (obs->parsed()) return cmd_obstruct(cfg);
    if (goe->parsed()) return cmd_goeritz(cfg);
    if (jon->parsed()) return cmd_jones(cfg);
    if (unk->parsed()) return cmd_unknot(cfg);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
