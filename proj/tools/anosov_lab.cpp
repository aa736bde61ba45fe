#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "anosov/errors.hpp"
#include "anosov/parallel.hpp"
#include "anosov/report.hpp"

using namespace anosov;

namespace {

bool all_digits(const std::string& s, std::size_t from) {
  return from < s.size() && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(from), s.end(),
                                        [](char ch) { return ch >= '0' && ch <= '9'; });
}

BigInt parse_integer(const std::string& text, const char* what) {
  const std::size_t from = !text.empty() && (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (!all_digits(text, from)) throw InputError(std::string("malformed ") + what + " '" + text + "'");
  return BigInt(text[0] == '+' ? text.substr(1) : text);
}

// Accepts "3", "3/2" and "1.25".
BigRational parse_rational(const std::string& text, const char* what) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt den = parse_integer(text.substr(slash + 1), what);
    if (den == 0) throw InputError(std::string(what) + ": zero denominator");
    return make_rational(parse_integer(text.substr(0, slash), what), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (!all_digits(frac, 0)) throw InputError(std::string("malformed ") + what + " '" + text + "'");
    const std::string whole = text.substr(0, dot);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !whole.empty() && whole[0] == '-';
    const BigInt w = whole.empty() || whole == "-" || whole == "+" ? BigInt(0) : parse_integer(whole, what);
    const BigInt f(frac);
    return make_rational(w * scale + (negative ? BigInt(-f) : f), scale);
  }
  return BigRational(parse_integer(text, what));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic orbits, conjugacy and surgery homology for suspensions of hyperbolic toral automorphisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  std::string format = "json";
  std::string m0 = "0";
  std::string c0 = "1";
  std::string kappa3 = "1";
  std::size_t period_orbits = 3, period_loops = 4, period_propb = 25;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrix, "2x2 integer matrix \"a,b;c,d\"")->required();
    sub->add_option("--format", format, "json, tsv or dot")->capture_default_str();
  };

  CLI::App* orbits = app.add_subcommand("orbits", "periodic point and orbit census");
  common(orbits);
  orbits->add_option("--max-period", period_orbits, "largest period")->capture_default_str();

  CLI::App* reversible = app.add_subcommand("reversible", "is A conjugate to A^-1 in GL(2,Z)");
  common(reversible);
  reversible->add_option("--brute-height", cfg.brute_height, "entry bound for the exhaustive search")->capture_default_str();

  CLI::App* surgery = app.add_subcommand("surgery", "H_1 after integral surgery on orbits");
  common(surgery);
  surgery->add_option("--move", cfg.moves, "move \"(pK-iJ,m)\"; repeatable")->required();
  surgery->add_option("--m0", m0, "slope threshold for the certified label")->capture_default_str();
  surgery->add_option("--seed", cfg.seed, "seed for the arc system")->capture_default_str();

  CLI::App* loops = app.add_subcommand("loop-candidates", "length-2 surgery loops passing the necessary conditions");
  common(loops);
  loops->add_option("--max-period", period_loops, "largest orbit period")->capture_default_str();
  loops->add_option("--max-slope", cfg.max_slope, "largest |m|")->capture_default_str();
  loops->add_option("--m0", m0, "slope threshold for the certified label")->capture_default_str();
  loops->add_option("--seed", cfg.seed, "seed for the arc systems")->capture_default_str();

  CLI::App* propb = app.add_subcommand("propb", "density bound table and growth rate");
  common(propb);
  propb->add_option("--max-period", period_propb, "census horizon")->capture_default_str();
  propb->add_option("--c0", c0, "constant C0")->capture_default_str();
  propb->add_option("--t0", cfg.propb.t0, "threshold t0")->capture_default_str();
  propb->add_option("--kappa3", kappa3, "constant kappa3")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.format = parse_format(format);
    cfg.m0 = parse_integer(m0, "m0");
    cfg.propb.c0 = parse_rational(c0, "c0");
    cfg.propb.kappa3 = parse_rational(kappa3, "kappa3");
    cfg.threads = worker_threads_from_env();

    nlohmann::ordered_json report;
    std::string tsv;
    bool dot_allowed = false;
    if (orbits->parsed()) {
      cfg.max_period = period_orbits;
      report = orbits_report(cfg);
      tsv = orbits_tsv(report);
    } else if (reversible->parsed()) {
      report = reversible_report(cfg);
      tsv = reversible_tsv(report);
    } else if (surgery->parsed()) {
      report = surgery_report(cfg);
      tsv = surgery_tsv(report);
    } else if (loops->parsed()) {
      cfg.max_period = period_loops;
      report = loop_candidates_report(cfg);
      tsv = loop_candidates_tsv(report);
      dot_allowed = true;
    } else {
      cfg.max_period = period_propb;
      report = propb_report(cfg);
      tsv = propb_tsv(report);
    }

    switch (cfg.format) {
      case Format::Json:
        std::cout << report.dump(2) << '\n';
        break;
      case Format::Tsv:
        std::cout << tsv;
        break;
      case Format::Dot:
        if (!dot_allowed) throw InputError("--format dot is only available for loop-candidates");
        std::cout << loop_candidates_dot(report);
        break;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
