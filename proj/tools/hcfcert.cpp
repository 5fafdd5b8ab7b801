// hcfcert: expansions, verification suites, transition tables and dimension
// certificates for Hurwitz continued fractions.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "hurwitz/commands.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/report.hpp"
#include "hurwitz/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitNoBracket = 4;

struct Common {
  long precision = 256;
  std::uint64_t seed = hurwitz::kDefaultSeed;
  std::string format = "json";
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--precision", c.precision, "MPFR precision in bits (>= 64)")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for sampling")->capture_default_str();
  sub->add_option("--format", c.format, "json | text | csv")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads (0: hardware concurrency)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz continued fraction toolkit"};
  app.require_subcommand(1);
  Common common;

  std::string literal;
  int expand_depth = 20;
  auto* expand = app.add_subcommand("expand", "HCF expansion of a number literal");
  expand->add_option("z", literal, "literal such as 0.3+0.3i or (3-4i)/25")->required();
  expand->add_option("--depth", expand_depth, "maximum number of digits")->capture_default_str();
  std::string policy = "strict";
  expand->add_option("--policy", policy, "strict | lenient rounding at half-integers (decimal input)")
      ->capture_default_str();
  add_common(expand, common);

  std::string suite;
  hurwitz::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--samples", vopt.samples, "number of cases (0: suite default)");
  verify->add_option("--depth", vopt.depth, "depth parameter (0: suite default)");
  verify->add_option("--points", vopt.points, "sampling-oracle points per pair")->capture_default_str();
  add_common(verify, common);

  auto* shapes = app.add_subcommand("shapes", "feasible shapes and the digit transition table");
  add_common(shapes, common);

  hurwitz::DimBoundsConfig dcfg;
  double s_value = 0.0;
  bool no_early_exit = false;
  auto* dim = app.add_subcommand("dim-bounds", "dimension certificates for digit-restricted sets");
  dim->add_option("--filter", dcfg.filter, "annulus | lower | schedule | prefixed")->capture_default_str();
  dim->add_option("--scan", dcfg.scan, "M | epsilon: closed-form table instead of a certificate");
  auto* optL = dim->add_option("--L", dcfg.L, "lower digit bound")->capture_default_str();
  dim->add_option("--M", dcfg.M, "upper digit bound")->capture_default_str();
  dim->add_option("--epsilon", dcfg.epsilon, "upper-bound exponent offset")->capture_default_str();
  auto* opt_s = dim->add_option("--s", s_value, "exponent to check (default: filter-specific)");
  dim->add_option("--depth", dcfg.depth, "deepest stage unfolded")->capture_default_str();
  dim->add_option("--from-depth", dcfg.from_depth, "first parent depth checked")->capture_default_str();
  dim->add_option("--tol", dcfg.tol, "bracket tolerance")->capture_default_str();
  dim->add_flag("--bracket", dcfg.bracket, "also bisect for a critical-exponent bracket");
  dim->add_flag("--no-early-exit", no_early_exit, "sum every descendant");
  dim->add_option("--diameters", dcfg.diameters, "sandwich | witness")->capture_default_str();
  dim->add_option("--window", dcfg.window, "digits enumerated before the analytic tail (lower filter)")
      ->capture_default_str();
  dim->add_option("--n-max", dcfg.n_max, "schedule scan length")->capture_default_str();
  dim->add_option("--prefix", dcfg.prefix, "prefix digits for the prefixed filter");
  add_common(dim, common);

  int cantor_depth = 8;
  double cantor_tol = 1e-3;
  auto* cantor = app.add_subcommand("cantor-demo", "bracket the middle-third Cantor dimension");
  cantor->add_option("--depth", cantor_depth, "deepest stage unfolded")->capture_default_str();
  cantor->add_option("--tol", cantor_tol, "bracket tolerance")->capture_default_str();
  add_common(cantor, common);

  auto* consts = app.add_subcommand("constants", "xi, gamma, rho and k_sep");
  add_common(consts, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  std::string name;
  try {
    const hurwitz::Format fmt = hurwitz::parse_format(common.format);
    if (common.precision < 64) throw hurwitz::ParseError("--precision must be at least 64");
    const auto prec = static_cast<mpfr_prec_t>(common.precision);
    nlohmann::ordered_json doc;
    if (*expand) {
      name = "expand";
      if (expand_depth < 1) throw hurwitz::ParseError("--depth must be at least 1");
      if (policy != "strict" && policy != "lenient") throw hurwitz::ParseError("unknown policy '" + policy + "'");
      doc = hurwitz::cmd_expand(literal, expand_depth, prec,
                                policy == "strict" ? hurwitz::BoundaryPolicy::kStrict : hurwitz::BoundaryPolicy::kLenient);
    } else if (*verify) {
      name = "verify";
      vopt.seed = common.seed;
      vopt.threads = common.threads;
      doc = hurwitz::run_suite(suite, vopt);
      if (!doc["passed"].get<bool>()) code = kExitFailure;
    } else if (*shapes) {
      name = "shapes";
      doc = hurwitz::cmd_shapes();
    } else if (*dim) {
      name = "dim-bounds";
      if (dcfg.depth < 1) throw hurwitz::ParseError("--depth must be at least 1");
      dcfg.L_given = optL->count() > 0;
      if (opt_s->count() > 0) dcfg.s = s_value;
      dcfg.early_exit = !no_early_exit;
      dcfg.threads = common.threads;
      doc = hurwitz::cmd_dim_bounds(dcfg);
    } else if (*cantor) {
      name = "cantor-demo";
      if (cantor_depth < 1) throw hurwitz::ParseError("--depth must be at least 1");
      doc = hurwitz::cmd_cantor_demo(cantor_depth, cantor_tol, common.threads);
    } else if (*consts) {
      name = "constants";
      doc = hurwitz::cmd_constants(prec);
    }
    std::cout << hurwitz::render(doc, fmt) << std::flush;
  } catch (const hurwitz::PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitPrecision;
  } catch (const hurwitz::NoBracket& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitNoBracket;
  } catch (const hurwitz::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const hurwitz::PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const hurwitz::FilterTooWeak& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitFailure;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "hcfcert " << name << ": " << secs << " s\n";
  return code;
}
