#include "oclab/cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oclab/eisenstein.hpp"
#include "oclab/errors.hpp"
#include "oclab/fpbasis.hpp"
#include "oclab/report.hpp"
#include "oclab/verify.hpp"

namespace oclab::cli {

namespace {

struct RunConfig {
  std::int64_t p = 0;
  int k = 0;
  std::size_t M = 20;
  std::optional<std::size_t> N;
  std::optional<std::size_t> i_max;
  std::string format = "text";
  std::string out;

  // umatrix / congruence / expand
  std::string check = "general";
  unsigned u_iters = 4;
  std::string function = "estar-ratio";

  // sweep
  std::vector<std::string> claims;
  std::vector<std::string> primes;
  std::vector<std::string> weights;
  unsigned jobs = 1;
};

void add_p(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--p", c.p, "prime p")->required();
}

void add_k(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--k", c.k, "weight k (even, divisible by p - 1)")->required();
}

void add_terms(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--terms", c.M, "last f_p index M checked")->capture_default_str();
}

void add_prec(CLI::App* cmd, RunConfig& c, const char* help) {
  cmd->add_option("--prec", c.N, help);
}

void add_imax(CLI::App* cmd, RunConfig& c, bool required) {
  auto* opt = cmd->add_option("--imax", c.i_max, "largest index i");
  if (required) {
    opt->required();
  }
}

void add_output(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

std::size_t ipow_size(std::int64_t p, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t n = 0; n < e; ++n) {
    r *= static_cast<std::size_t>(p);
  }
  return r;
}

// "4,6,8" or "4..40" (inclusive) or a mix.
std::vector<long> parse_int_list(const std::vector<std::string>& items, const char* what) {
  std::vector<long> out;
  for (const auto& item : items) {
    try {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        std::size_t used = 0;
        out.push_back(std::stol(item, &used));
        if (used != item.size()) {
          throw std::invalid_argument(item);
        }
        continue;
      }
      const long lo = std::stol(item.substr(0, dots));
      const long hi = std::stol(item.substr(dots + 2));
      for (long v = lo; v <= hi; ++v) {
        out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw ParameterError(std::string("bad ") + what + " value '" + item + "'");
    }
  }
  return out;
}

int report_exit(bool pass) { return pass ? kExitPass : kExitViolation; }

int emit(const VerificationReport& r, const RunConfig& c) {
  emit_report(r, parse_format(c.format), c.out);
  return report_exit(r.pass);
}

QSeries expand_source(const RunConfig& c, std::size_t prec) {
  const std::int64_t p = c.p;
  const std::string& fn = c.function;
  if (fn == "estar-ratio") {
    return ratio_with_frobenius(estar(p, c.k, prec), p);
  }
  if (fn == "e4-ratio" || fn == "e6-ratio") {
    return ratio_with_frobenius(eisenstein_series(fn == "e4-ratio" ? 4 : 6, prec), p);
  }
  if (fn == "uf-over-f") {
    const QSeries f = lift_F(p, c.k, static_cast<std::size_t>(p) * (prec - 1) + 1);
    return mul(apply_U(f, p), invert(f.truncated(prec)));
  }
  const QSeries es = estar(p, c.k, prec);
  const QSeries f = lift_F(p, c.k, prec);
  if (fn == "es-over-f") {
    return mul(es, invert(f));
  }
  return mul(f, invert(es));
}

int run_expand(const RunConfig& c) {
  require_genus_zero_prime(c.p);
  const std::size_t prec = c.N.value_or(c.M + 1);
  if (prec < c.M + 1) {
    throw PrecisionError("expand: needs q-precision >= " + std::to_string(c.M + 1) + ", got " +
                         std::to_string(prec));
  }
  const FpExpansion e = expand_in_fp(expand_source(c, prec), c.p, c.M);
  const auto vals = valuation_profile(e);
  std::ostringstream os;
  switch (parse_format(c.format)) {
    case Format::Json: {
      nlohmann::json coeffs = nlohmann::json::array();
      for (std::size_t i = 0; i <= c.M; ++i) {
        coeffs.push_back({{"i", i}, {"a", to_string(e.a[i])}, {"v_p", vals[i].to_string()}});
      }
      nlohmann::json j = {{"function", c.function}, {"p", c.p},        {"M", c.M},
                          {"N", prec},              {"coefficients", coeffs}};
      if (c.function.rfind("e4", 0) != 0 && c.function.rfind("e6", 0) != 0) {
        j["k"] = c.k;
      }
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "i,a,v_p\n";
      for (std::size_t i = 0; i <= c.M; ++i) {
        os << i << ',' << to_string(e.a[i]) << ',' << vals[i].to_string() << '\n';
      }
      break;
    case Format::Text:
      os << c.function << "  p=" << c.p << " N=" << prec << '\n';
      for (std::size_t i = 0; i <= c.M; ++i) {
        os << "  " << i << "  v_p=" << vals[i].to_string() << "  a=" << to_string(e.a[i])
           << '\n';
      }
      break;
  }
  write_output(os.str(), c.out);
  return kExitPass;
}

int run_sweep_command(const RunConfig& c) {
  std::vector<SweepCell> cells;
  const auto ps = parse_int_list(c.primes, "--p");
  const auto ks = c.weights.empty() ? std::vector<long>{0} : parse_int_list(c.weights, "--k");
  for (const auto& name : c.claims) {
    const SweepClaim claim = parse_sweep_claim(name);
    for (long p : ps) {
      for (long k : ks) {
        cells.push_back({claim, p, static_cast<int>(k)});
      }
    }
  }
  SweepOptions options;
  options.M = c.M;
  options.N = c.N;
  if (c.i_max) {
    options.i_max = *c.i_max;
  }
  const auto reports = run_sweep(cells, options, c.jobs);
  write_output(render(reports, parse_format(c.format)), c.out);
  bool pass = true;
  for (const auto& r : reports) {
    pass = pass && r.pass;
  }
  return report_exit(pass);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Exact q-expansion checks of overconvergence bounds for Eisenstein series",
               "oclab"};
  app.require_subcommand(1);
  RunConfig c;
  std::function<int()> action;

  auto* thm_a = app.add_subcommand("thm-a", "expand E*_k/V(E*_k) in f_p and check the main bound");
  add_p(thm_a, c);
  add_k(thm_a, c);
  add_terms(thm_a, c);
  add_prec(thm_a, c, "q-precision (default M + 1)");
  add_output(thm_a, c);
  thm_a->callback([&] { action = [&] { return emit(verify_theorem_a(c.p, c.k, c.M, c.N), c); }; });

  auto* katz = app.add_subcommand("katz", "certify the main bound through the Katz expansion");
  add_p(katz, c);
  add_k(katz, c);
  add_imax(katz, c, true);
  add_prec(katz, c, "q-precision (default dim M_{i_max (p-1)})");
  add_output(katz, c);
  katz->callback([&] {
    action = [&] { return emit(verify_theorem_a_katz(c.p, c.k, *c.i_max, c.N), c); };
  });

  auto* special = app.add_subcommand("special", "the p = 2, 3 bound s + 6/(p(p-1)) i");
  add_p(special, c);
  add_k(special, c);
  add_terms(special, c);
  add_prec(special, c, "q-precision (default M + 1)");
  add_output(special, c);
  special->callback([&] { action = [&] { return emit(verify_special(c.p, c.k, c.M, c.N), c); }; });

  auto* congruence =
      app.add_subcommand("congruence", "E*_k = E_k = F and U^i(F) = F modulo p^t");
  add_p(congruence, c);
  add_k(congruence, c);
  add_prec(congruence, c, "q-precision (default 64)");
  congruence->add_option("--uiters", c.u_iters, "number of U iterates")->capture_default_str();
  add_output(congruence, c);
  congruence->callback([&] {
    action = [&] { return emit(verify_congruence(c.p, c.k, c.N.value_or(64), c.u_iters), c); };
  });

  auto* identities = app.add_subcommand("identities", "closed forms of E_4/V(E_4), E_6/V(E_6)");
  add_p(identities, c);
  add_prec(identities, c, "q-precision (default 200)");
  add_output(identities, c);
  identities->callback([&] {
    action = [&] { return emit(verify_identities_21(c.p, c.N.value_or(200)), c); };
  });

  auto* cor_uf = app.add_subcommand("cor-uf", "U(F)/F in p^-1 M_0(>= p rho)");
  add_p(cor_uf, c);
  add_k(cor_uf, c);
  add_terms(cor_uf, c);
  add_prec(cor_uf, c, "q-precision of F (default p M + 1)");
  add_output(cor_uf, c);
  cor_uf->callback([&] { action = [&] { return emit(verify_cor_UF_F(c.p, c.k, c.M, c.N), c); }; });

  auto* lemma_ui = app.add_subcommand("lemma-ui", "U^i(F)/F - U(F)/F in M_0(>= p rho)");
  add_p(lemma_ui, c);
  add_k(lemma_ui, c);
  add_terms(lemma_ui, c);
  add_imax(lemma_ui, c, true);
  add_prec(lemma_ui, c, "q-precision of F (default p^i_max M + 1)");
  add_output(lemma_ui, c);
  lemma_ui->callback([&] {
    action = [&] { return emit(verify_lemma_ui(c.p, c.k, *c.i_max, c.M, c.N), c); };
  });

  auto* es_vs_f = app.add_subcommand("es-vs-f", "E*_k/F and F/E*_k");
  add_p(es_vs_f, c);
  add_k(es_vs_f, c);
  add_terms(es_vs_f, c);
  add_prec(es_vs_f, c, "q-precision (default M + 1)");
  add_output(es_vs_f, c);
  es_vs_f->callback(
      [&] { action = [&] { return emit(verify_prop_es_vs_f(c.p, c.k, c.M, c.N), c); }; });

  auto* serre = app.add_subcommand("serre", "min_val(U^i(F) - E*_k) for i = 0..i_max");
  add_p(serre, c);
  add_k(serre, c);
  add_imax(serre, c, true);
  add_prec(serre, c, "q-precision (default 4 p^i_max + 1)");
  add_output(serre, c);
  serre->callback([&] {
    action = [&] {
      const std::size_t n = c.N.value_or(4 * ipow_size(c.p, *c.i_max) + 1);
      return emit(verify_serre_convergence(c.p, c.k, *c.i_max, n), c);
    };
  });

  auto* umatrix = app.add_subcommand("umatrix", "entries c_{i,j} of U on the f_p basis");
  add_p(umatrix, c);
  add_imax(umatrix, c, true);
  umatrix->add_option("--check", c.check, "general or star")
      ->check(CLI::IsMember({"general", "star"}))
      ->capture_default_str();
  add_output(umatrix, c);
  umatrix->callback([&] {
    action = [&] {
      return emit(c.check == "star" ? verify_umatrix_star(c.p, *c.i_max)
                                    : verify_umatrix_general(c.p, *c.i_max),
                  c);
    };
  });

  auto* expand = app.add_subcommand("expand", "dump the f_p expansion of a weight-0 function");
  add_p(expand, c);
  expand->add_option("--k", c.k, "weight k");
  add_terms(expand, c);
  add_prec(expand, c, "q-precision (default M + 1)");
  expand
      ->add_option("--function", c.function,
                   "estar-ratio, e4-ratio, e6-ratio, uf-over-f, es-over-f, f-over-es")
      ->check(CLI::IsMember(
          {"estar-ratio", "e4-ratio", "e6-ratio", "uf-over-f", "es-over-f", "f-over-es"}))
      ->capture_default_str();
  add_output(expand, c);
  expand->callback([&] {
    action = [&] {
      const bool needs_k = c.function != "e4-ratio" && c.function != "e6-ratio";
      if (needs_k && c.k == 0) {
        throw ParameterError("expand --function " + c.function + " needs --k");
      }
      return run_expand(c);
    };
  });

  auto* sweep = app.add_subcommand("sweep", "run claims over a grid of (p, k)");
  sweep->add_option("--claims", c.claims, "claims to run (thm-a, katz, special, ...)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--p", c.primes, "primes, e.g. 2,3,5 or 2..13")->required()->delimiter(',');
  sweep->add_option("--k", c.weights, "weights, e.g. 4,6 or 4..40")->delimiter(',');
  add_terms(sweep, c);
  add_imax(sweep, c, false);
  add_prec(sweep, c, "q-precision passed to every cell");
  sweep->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
  add_output(sweep, c);
  sweep->callback([&] { action = [&] { return run_sweep_command(c); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    const int code = app.exit(e, out, err);
    std::cout << out.str();
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    return action();
  } catch (const ConsistencyError& e) {
    err << "oclab: internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "oclab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "oclab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionError& e) {
    err << "oclab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "oclab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "oclab: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace oclab::cli
