#include "oclab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "oclab/eisenstein.hpp"
#include "oclab/errors.hpp"
#include "oclab/katz.hpp"
#include "oclab/umatrix.hpp"

namespace oclab {

namespace {

BigRational rat(long num, long den = 1) { return make_rational(BigInt(num), BigInt(den)); }

BigRational power_of(long base, unsigned long e) {
  return BigRational(ipow(BigInt(base), e));
}

std::size_t ipow_size(std::int64_t p, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t n = 0; n < e; ++n) {
    r *= static_cast<std::size_t>(p);
  }
  return r;
}

std::size_t resolve_prec(std::optional<std::size_t> given, std::size_t needed, const char* what) {
  if (!given) {
    return needed;
  }
  if (*given < needed) {
    throw PrecisionError(std::string(what) + ": needs q-precision >= " + std::to_string(needed) +
                         ", got " + std::to_string(*given));
  }
  return *given;
}

void add_bound_rows(VerificationReport& r, const std::string& part, const FpExpansion& e,
                    const LinearBound& b) {
  const BoundReport br = check_bound(e, b);
  for (std::size_t i = br.first; i <= br.last; ++i) {
    r.add(make_row(part, i, br.observed[i - br.first], b.required(i)));
  }
  const std::string prefix = part.empty() ? "" : part + ".";
  r.derived[prefix + "bound"] = b.describe();
  r.derived[prefix + "min_margin"] = br.min_margin.to_string();
  r.derived[prefix + "certificate"] = br.summary();
}

// Equality of two series encoded as a row: observed = min valuation of the
// difference (inf iff equal), required = inf.
ReportRow equality_row(const std::string& part, std::size_t i, const QSeries& a, const QSeries& b,
                       std::int64_t p) {
  return make_row(part, i, min_val(a - b, p, 0), PadicVal::infinity());
}

BigRational slope_for(std::int64_t p, const BigRational& sigma) {
  return make_rational(12, BigInt(static_cast<long>(p - 1))) * sigma;
}

void record_params(VerificationReport& r, const Params& prm) {
  r.derived["rho"] = to_string(prm.rho);
  r.derived["t"] = std::to_string(prm.t);
  if (prm.s) {
    r.derived["s"] = std::to_string(*prm.s);
  }
  r.derived["F"] = prm.f_recipe.describe();
}

QSeries quotient(const QSeries& a, const QSeries& b) { return mul(a, invert(b)); }

}  // namespace

std::vector<ClosedForm> closed_forms(std::int64_t p) {
  if (p == 2) {
    return {
        {2, 4, {1, power_of(2, 8)}, {1, power_of(2, 4)}, rat(1, 3)},
        {2, 6, {1, -power_of(2, 9)}, {1, -power_of(2, 3)}, rat(1, 4)},
    };
  }
  if (p == 3) {
    return {
        {3, 4, {1, power_of(3, 5)}, {1, 3}, rat(1, 6)},
        {3,
         6,
         {1, -2 * power_of(3, 5), -power_of(3, 9)},
         {1, 2 * power_of(3, 2), -power_of(3, 3)},
         rat(1, 4)},
    };
  }
  throw ParameterError("closed forms are only given for p = 2, 3");
}

QSeries ratio_with_frobenius(const QSeries& g, std::int64_t p) {
  return quotient(g, apply_V(g, p).truncated(g.prec()));
}

VerificationReport verify_theorem_a(std::int64_t p, int k, std::size_t M,
                                    std::optional<std::size_t> N) {
  require_genus_zero_prime(p);
  const Params prm = params(p, k);
  const std::size_t prec = resolve_prec(N, M + 1, "verify_theorem_a");
  const QSeries g = ratio_with_frobenius(estar(p, k, prec), p);
  const FpExpansion e = expand_in_fp(g, p, M);

  VerificationReport r;
  r.claim = ClaimId::ThmA;
  r.params = {p, k, M, prec, std::nullopt};
  record_params(r, prm);
  r.derived["sigma"] = to_string(prm.main_rate());
  r.derived["a_0"] = to_string(e.a[0]);
  if (M >= 1) {
    add_bound_rows(r, "", e, membership_bound(p, 0, prm.main_rate(), 1));
  }
  return r;
}

VerificationReport verify_theorem_a_katz(std::int64_t p, int k, std::size_t i_max,
                                         std::optional<std::size_t> N) {
  require_prime(p);
  if (p < 5) {
    throw ParameterError("Katz certification needs p >= 5");
  }
  const Params prm = params(p, k);
  const std::size_t needed = modular_forms_dim(static_cast<int>(i_max) * static_cast<int>(p - 1));
  const std::size_t prec = resolve_prec(N, std::max<std::size_t>(needed, 1), "katz");
  const QSeries g = ratio_with_frobenius(estar(p, k, prec), p);
  const KatzExpansion e = katz_expand(g, p, i_max, prec);
  const auto profile = katz_profile(e);

  VerificationReport r;
  r.claim = ClaimId::ThmA;
  r.params = {p, k, std::nullopt, prec, i_max};
  record_params(r, prm);
  const BigRational sigma = prm.main_rate();
  r.derived["sigma"] = to_string(sigma);
  r.derived["basis"] = e.basis_choice;
  r.derived["justified_prec"] = std::to_string(e.justified_prec);
  for (std::size_t i = 0; i <= i_max; ++i) {
    r.add(make_row("katz", i, profile[i], PadicVal(BigRational(sigma * static_cast<long>(i)))));
  }
  const std::size_t jp = e.justified_prec;
  if (jp >= 1) {
    r.add(equality_row("round-trip", jp, katz_sum(e, prec).truncated(jp), g.truncated(jp), p));
  }
  return r;
}

VerificationReport verify_special(std::int64_t p, int k, std::size_t M,
                                  std::optional<std::size_t> N) {
  if (p != 2 && p != 3) {
    throw ParameterError("verify_special: p must be 2 or 3");
  }
  const Params prm = params(p, k);
  const std::size_t prec = resolve_prec(N, M + 1, "verify_special");
  const QSeries g = ratio_with_frobenius(estar(p, k, prec), p);
  const FpExpansion e = expand_in_fp(g, p, M);

  VerificationReport r;
  r.claim = ClaimId::PropSpecial;
  r.params = {p, k, M, prec, std::nullopt};
  record_params(r, prm);
  r.add(make_row("a_0", 0, padic_val(BigRational(e.a[0] - 1), p), PadicVal::infinity()));
  if (M >= 1) {
    const LinearBound b{BigRational(*prm.s), slope_for(p, rat(1, 2 * p)), 1};
    add_bound_rows(r, "", e, b);
    std::string attained;
    for (std::size_t i = 1; i <= M; ++i) {
      if (padic_val(e.a[i], p) == b.required(i)) {
        attained += (attained.empty() ? "" : ",") + std::to_string(i);
      }
    }
    r.derived["equality_attained_at"] = attained.empty() ? "none" : attained;
  }
  return r;
}

VerificationReport verify_congruence(std::int64_t p, int k, std::size_t N, unsigned u_iters,
                                     std::size_t u_cap) {
  const Params prm = params(p, k);
  if (N < 1) {
    throw ParameterError("verify_congruence: N must be >= 1");
  }
  const QSeries es = estar(p, k, N);
  const QSeries ek = eisenstein_series(k, N);
  const std::size_t full = (N - 1) * ipow_size(p, u_iters) + 1;
  const std::size_t f_prec = std::min(full, std::max(N, u_cap));
  const QSeries f = lift_F(p, k, f_prec);
  const QSeries f_n = f.truncated(N);

  VerificationReport r;
  r.claim = ClaimId::PropCongr;
  r.params = {p, k, std::nullopt, N, u_iters};
  record_params(r, prm);
  const PadicVal t(static_cast<long>(prm.t));

  r.add(make_row("E*-E_k:k-1", 0, min_val(es - ek, p), PadicVal(static_cast<long>(k - 1))));
  r.add(make_row("E*-E_k", 0, min_val(es - ek, p), t));
  const PadicVal es_f = min_val(es - f_n, p);
  r.add(make_row("E*-F", 0, es_f, t));
  r.derived["E*-F_exponent"] = es_f.to_string();
  r.derived["t_optimal"] = es_f == t ? "yes" : "no";
  r.derived["F_prec"] = std::to_string(f_prec);

  QSeries iterate = f;
  for (unsigned i = 1; i <= u_iters; ++i) {
    iterate = apply_U(iterate, p);
    const std::string key = "U^" + std::to_string(i) + "_prec";
    if (iterate.prec() < N && prm.f_recipe.factor_count() <= 2) {
      // F was capped; read the needed coefficients F[n p^i] directly.
      const std::size_t stride = ipow_size(p, i);
      std::vector<std::size_t> idx(N);
      for (std::size_t n = 0; n < N; ++n) {
        idx[n] = n * stride;
      }
      const QSeries direct(lift_F_at(p, k, idx));
      r.add(make_row("U^i(F)-F", i, min_val(direct - f_n, p), t));
      r.derived[key] = std::to_string(N) + " (pointwise)";
      continue;
    }
    const std::size_t cmp = std::min(N, iterate.prec());
    r.add(make_row("U^i(F)-F", i, min_val(iterate.truncated(cmp) - f.truncated(cmp), p), t));
    r.derived[key] = std::to_string(cmp);
  }
  return r;
}

VerificationReport verify_identities_21(std::int64_t p, std::size_t N) {
  const auto forms = closed_forms(p);
  const QSeries f = eta_quotient_fp(p, N);
  const auto powers_of_f = [&](const std::vector<BigRational>& poly) {
    QSeries s(N);
    QSeries fj = QSeries::one(N);
    for (const auto& c : poly) {
      s += fj * c;
      fj = mul(fj, f);
    }
    return s;
  };

  VerificationReport r;
  r.claim = ClaimId::Identities21;
  r.params = {p, std::nullopt, std::nullopt, N, std::nullopt};
  for (const auto& form : forms) {
    const QSeries lhs = ratio_with_frobenius(eisenstein_series(form.weight, N), p);
    const QSeries rhs = quotient(powers_of_f(form.numer), powers_of_f(form.denom));
    const std::string name = "E" + std::to_string(form.weight) + "/V(E" +
                             std::to_string(form.weight) + ")";
    r.add(equality_row(name, 0, lhs, rhs, p));
    const QSeries diff = lhs - rhs;
    r.derived[name + ".first_mismatch"] =
        diff.is_zero() ? "none" : std::to_string(diff.order());
  }
  return r;
}

VerificationReport verify_cor_UF_F(std::int64_t p, int k, std::size_t M,
                                   std::optional<std::size_t> N) {
  require_genus_zero_prime(p);
  const Params prm = params(p, k);
  const std::size_t prec =
      resolve_prec(N, static_cast<std::size_t>(p) * M + 1, "verify_cor_UF_F");
  const QSeries f = lift_F(p, k, prec);
  const QSeries uf = apply_U(f, p).truncated(M + 1);
  const FpExpansion e = expand_in_fp(quotient(uf, f.truncated(M + 1)), p, M);

  VerificationReport r;
  r.claim = ClaimId::CorUfF;
  r.params = {p, k, M, prec, std::nullopt};
  record_params(r, prm);
  r.derived["a_0"] = to_string(e.a[0]);
  if (M >= 1) {
    add_bound_rows(r, "", e,
                   membership_bound(p, -1, BigRational(static_cast<long>(p) * prm.rho), 1));
  }
  return r;
}

VerificationReport verify_lemma_ui(std::int64_t p, int k, std::size_t i_max, std::size_t M,
                                   std::optional<std::size_t> N) {
  require_genus_zero_prime(p);
  const Params prm = params(p, k);
  const std::size_t prec =
      resolve_prec(N, ipow_size(p, i_max) * M + 1, "verify_lemma_ui");
  const QSeries f = lift_F(p, k, prec);
  const QSeries f_inv = invert(f.truncated(M + 1));

  VerificationReport r;
  r.claim = ClaimId::LemmaUi;
  r.params = {p, k, M, prec, i_max};
  record_params(r, prm);
  const LinearBound b = membership_bound(p, 0, BigRational(static_cast<long>(p) * prm.rho), 1);

  QSeries iterate = apply_U(f, p);
  const QSeries base = mul(iterate.truncated(M + 1), f_inv);
  if (i_max < 2) {
    r.derived["note"] = "i = 1 gives the zero function; nothing to check";
  }
  for (std::size_t i = 2; i <= i_max; ++i) {
    iterate = apply_U(iterate, p);
    const QSeries diff = mul(iterate.truncated(M + 1), f_inv) - base;
    const FpExpansion e = expand_in_fp(diff, p, M);
    const std::string part = "i=" + std::to_string(i);
    r.add(make_row(part, 0, padic_val(e.a[0], p), PadicVal(0L)));
    if (M >= 1) {
      add_bound_rows(r, part, e, b);
    }
  }
  return r;
}

VerificationReport verify_prop_es_vs_f(std::int64_t p, int k, std::size_t M,
                                       std::optional<std::size_t> N) {
  require_genus_zero_prime(p);
  const Params prm = params(p, k);
  const std::size_t prec = resolve_prec(N, M + 1, "verify_prop_es_vs_f");
  const QSeries es = estar(p, k, prec);
  const QSeries f = lift_F(p, k, prec);
  const FpExpansion ratio = expand_in_fp(quotient(es, f), p, M);
  const FpExpansion inverse = expand_in_fp(quotient(f, es), p, M);

  VerificationReport r;
  r.claim = ClaimId::PropEsVsF;
  r.params = {p, k, M, prec, std::nullopt};
  record_params(r, prm);
  r.add(make_row("E*/F:a_0", 0, padic_val(BigRational(ratio.a[0] - 1), p), PadicVal::infinity()));
  r.add(make_row("F/E*:a_0", 0, padic_val(BigRational(inverse.a[0] - 1), p),
                 PadicVal::infinity()));
  if (M >= 1) {
    const BigRational p_rho = static_cast<long>(p) * prm.rho;
    add_bound_rows(r, "E*/F", ratio, membership_bound(p, -1, p_rho, 1));
    add_bound_rows(r, "F/E*", inverse,
                   membership_bound(p, 0, make_rational(prm.t, prm.t + 1) * p_rho, 1));
  }
  return r;
}

VerificationReport verify_serre_convergence(std::int64_t p, int k, std::size_t i_max,
                                            std::size_t N) {
  if (p != 2 && p != 3 && p != 5 && p != 7) {
    throw ParameterError("Serre convergence is run for p in {2, 3, 5, 7}");
  }
  const Params prm = params(p, k);
  const std::size_t needed = ipow_size(p, i_max) + 1;
  if (N < needed) {
    throw PrecisionError("verify_serre_convergence: i_max = " + std::to_string(i_max) +
                         " needs q-precision >= " + std::to_string(needed) + ", got " +
                         std::to_string(N));
  }
  const QSeries es = estar(p, k, N);
  QSeries iterate = lift_F(p, k, N);

  VerificationReport r;
  r.claim = ClaimId::SerreConv;
  r.params = {p, k, std::nullopt, N, i_max};
  record_params(r, prm);

  std::vector<PadicVal> m;
  std::string sequence;
  for (std::size_t i = 0; i <= i_max; ++i) {
    if (i > 0) {
      iterate = apply_U(iterate, p);
    }
    const std::size_t prec_i = iterate.prec();
    m.push_back(min_val(iterate - es.truncated(prec_i), p));
    sequence += (i == 0 ? "" : ",") + m.back().to_string();
    r.derived["prec_" + std::to_string(i)] = std::to_string(prec_i);
  }
  r.derived["m"] = sequence;
  r.add(make_row("m_0>=t", 0, m[0], PadicVal(static_cast<long>(prm.t))));
  for (std::size_t i = 1; i <= i_max; ++i) {
    r.add(make_row("nondecreasing", i, m[i], m[i - 1]));
  }
  if (i_max >= 1) {
    r.add(make_row("growth", i_max, m[i_max], m[0] + PadicVal(1L)));
  }
  return r;
}

VerificationReport verify_umatrix_general(std::int64_t p, std::size_t i_max) {
  const UMatrix u = compute_umatrix(p, i_max);
  VerificationReport r;
  r.claim = ClaimId::UmatrixGeneral;
  r.params = {p, std::nullopt, std::nullopt, std::nullopt, i_max};
  r.derived["gamma_p"] = to_string(gamma_p(p));
  for (const auto& [i, j] : support_violations(u)) {
    ReportRow row = make_row("support", i, padic_val(BigRational(u.at(i, j)), p),
                             PadicVal::infinity());
    row.j = j;
    r.add(std::move(row));
  }
  if (p == 2) {
    const UMatrix rec = umatrix_recurrence_p2(i_max);
    PadicVal diff = PadicVal::infinity();
    for (std::size_t i = 0; i <= i_max; ++i) {
      for (std::size_t j = 0; j <= 2 * i; ++j) {
        diff = min(diff, padic_val(BigRational(u.at(i, j) - rec.at(i, j)), p));
      }
    }
    r.add(make_row("recurrence", i_max, diff, PadicVal::infinity()));
  }
  for (const auto& e : check_general_bound(u).entries) {
    ReportRow row = make_row("", e.i, e.observed, e.required);
    row.j = e.j;
    r.add(std::move(row));
  }
  return r;
}

VerificationReport verify_umatrix_star(std::int64_t p, std::size_t i_max) {
  if (p != 2 && p != 3) {
    // Same refusal as check_star_bound, before the matrix is computed.
    check_star_bound(UMatrix{p, 0, {}});
  }
  const UMatrix u = compute_umatrix(p, i_max);
  VerificationReport r;
  r.claim = ClaimId::UmatrixStar;
  r.params = {p, std::nullopt, std::nullopt, std::nullopt, i_max};
  r.derived["slope"] = to_string(star_slope(p));
  r.derived["preserved_rate"] = to_string(star_rate(p));
  for (const auto& e : check_star_bound(u).entries) {
    ReportRow row = make_row("", e.i, e.observed, e.required);
    row.j = e.j;
    r.add(std::move(row));
  }
  return r;
}

BoundLines bound_lines(std::int64_t p, int k) {
  if (p != 2 && p != 3) {
    throw ParameterError("bound_lines: p must be 2 or 3");
  }
  const Params prm = params(p, k);
  BoundLines out{slope_for(p, prm.main_rate()), BigRational(*prm.s),
                 slope_for(p, rat(1, 2 * p)), std::nullopt};
  if (out.main_slope > out.special_slope) {
    out.crossover = out.special_offset / (out.main_slope - out.special_slope);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::pair<SweepClaim, const char*>, 11> kSweepNames{{
    {SweepClaim::ThmA, "thm-a"},
    {SweepClaim::ThmAKatz, "katz"},
    {SweepClaim::Special, "special"},
    {SweepClaim::Congruence, "congruence"},
    {SweepClaim::Identities, "identities"},
    {SweepClaim::CorUf, "cor-uf"},
    {SweepClaim::LemmaUi, "lemma-ui"},
    {SweepClaim::EsVsF, "es-vs-f"},
    {SweepClaim::Serre, "serre"},
    {SweepClaim::UmatrixGeneral, "umatrix-general"},
    {SweepClaim::UmatrixStar, "umatrix-star"},
}};

bool weight_ok(std::int64_t p, int k) {
  try {
    require_weight(p, k);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

bool uses_weight(SweepClaim c) {
  return c != SweepClaim::Identities && c != SweepClaim::UmatrixGeneral &&
         c != SweepClaim::UmatrixStar;
}

}  // namespace

SweepClaim parse_sweep_claim(const std::string& text) {
  for (const auto& [claim, name] : kSweepNames) {
    if (text == name) {
      return claim;
    }
  }
  throw ParameterError("unknown sweep claim '" + text + "'");
}

std::string to_string(SweepClaim c) {
  for (const auto& [claim, name] : kSweepNames) {
    if (claim == c) {
      return name;
    }
  }
  return "unknown";
}

bool cell_applicable(const SweepCell& cell) {
  const std::int64_t p = cell.p;
  if (!is_prime(p)) {
    return false;
  }
  switch (cell.claim) {
    case SweepClaim::ThmA:
    case SweepClaim::CorUf:
    case SweepClaim::LemmaUi:
    case SweepClaim::EsVsF:
      return is_genus_zero_prime(p) && weight_ok(p, cell.k);
    case SweepClaim::ThmAKatz:
      return p >= 5 && weight_ok(p, cell.k);
    case SweepClaim::Special:
      return (p == 2 || p == 3) && weight_ok(p, cell.k);
    case SweepClaim::Congruence:
      return weight_ok(p, cell.k);
    case SweepClaim::Serre:
      return p <= 7 && weight_ok(p, cell.k);
    case SweepClaim::Identities:
    case SweepClaim::UmatrixStar:
      return p == 2 || p == 3;
    case SweepClaim::UmatrixGeneral:
      return is_genus_zero_prime(p);
  }
  return false;
}

VerificationReport run_cell(const SweepCell& cell, const SweepOptions& o) {
  const std::int64_t p = cell.p;
  const int k = cell.k;
  switch (cell.claim) {
    case SweepClaim::ThmA:
      return verify_theorem_a(p, k, o.M, o.N);
    case SweepClaim::ThmAKatz:
      return verify_theorem_a_katz(p, k, o.i_max, o.N);
    case SweepClaim::Special:
      return verify_special(p, k, o.M, o.N);
    case SweepClaim::Congruence:
      return verify_congruence(p, k, o.N.value_or(64));
    case SweepClaim::Identities:
      return verify_identities_21(p, o.N.value_or(200));
    case SweepClaim::CorUf:
      return verify_cor_UF_F(p, k, o.M, o.N);
    case SweepClaim::LemmaUi:
      return verify_lemma_ui(p, k, o.i_max, o.M, o.N);
    case SweepClaim::EsVsF:
      return verify_prop_es_vs_f(p, k, o.M, o.N);
    case SweepClaim::Serre:
      return verify_serre_convergence(p, k, o.i_max,
                                      o.N.value_or(4 * ipow_size(p, o.i_max) + 1));
    case SweepClaim::UmatrixGeneral:
      return verify_umatrix_general(p, o.i_max);
    case SweepClaim::UmatrixStar:
      return verify_umatrix_star(p, o.i_max);
  }
  throw ParameterError("run_cell: unknown claim");
}

std::vector<VerificationReport> run_sweep(std::vector<SweepCell> cells, const SweepOptions& options,
                                          unsigned jobs) {
  for (auto& c : cells) {
    if (!uses_weight(c.claim)) {
      c.k = 0;
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::erase_if(cells, [](const SweepCell& c) { return !cell_applicable(c); });

  std::vector<std::optional<VerificationReport>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t n = next++; n < cells.size(); n = next++) {
      try {
        results[n] = run_cell(cells[n], options);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) {
    threads.emplace_back(worker);
  }
  worker();
  for (auto& t : threads) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  std::vector<VerificationReport> out;
  out.reserve(results.size());
  for (auto& r : results) {
    out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace oclab
