#pragma once

// End-to-end checks of the overconvergence statements over finite index
// ranges. Each verifier sizes the q-precision its index range needs and
// refuses (PrecisionError) an explicit precision that is too small.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oclab/arith.hpp"
#include "oclab/fpbasis.hpp"
#include "oclab/qseries.hpp"
#include "oclab/report.hpp"

namespace oclab {

// E_w / V(E_w) = numer(f_p) / denom(f_p) for w in {4, 6}, p in {2, 3}.
struct ClosedForm {
  std::int64_t p;
  int weight;
  std::vector<BigRational> numer;
  std::vector<BigRational> denom;
  // Rate sigma for which the function is a unit of M_0(Z_p, >= sigma).
  BigRational unit_rate;
};

std::vector<ClosedForm> closed_forms(std::int64_t p);

// g / V(g) at the precision of g.
QSeries ratio_with_frobenius(const QSeries& g, std::int64_t p);

VerificationReport verify_theorem_a(std::int64_t p, int k, std::size_t M,
                                    std::optional<std::size_t> N = std::nullopt);

// Same claim certified through the Katz expansion (p >= 5): v_p(b_i) >= sigma i.
VerificationReport verify_theorem_a_katz(std::int64_t p, int k, std::size_t i_max,
                                         std::optional<std::size_t> N = std::nullopt);

VerificationReport verify_special(std::int64_t p, int k, std::size_t M,
                                  std::optional<std::size_t> N = std::nullopt);

inline constexpr std::size_t kDefaultUIterateCap = 250000;

// E* = E = F mod p^t at precision N, and U^i(F) = F mod p^t for i <= u_iters.
// F is built to precision (N-1) p^{u_iters} + 1 when that stays below u_cap.
// Past the cap, iterates of an F with at most two Eisenstein factors read
// F[n p^i] pointwise; other iterates are compared on the coefficients that
// remain. The precision used per iterate is recorded in `derived`.
VerificationReport verify_congruence(std::int64_t p, int k, std::size_t N = 64,
                                     unsigned u_iters = 4,
                                     std::size_t u_cap = kDefaultUIterateCap);

VerificationReport verify_identities_21(std::int64_t p, std::size_t N = 200);

VerificationReport verify_cor_UF_F(std::int64_t p, int k, std::size_t M,
                                   std::optional<std::size_t> N = std::nullopt);

VerificationReport verify_lemma_ui(std::int64_t p, int k, std::size_t i_max, std::size_t M,
                                   std::optional<std::size_t> N = std::nullopt);

VerificationReport verify_prop_es_vs_f(std::int64_t p, int k, std::size_t M,
                                       std::optional<std::size_t> N = std::nullopt);

// m_i = min_val(U^i(F) - E*_k) for i = 0..i_max; needs N >= p^{i_max} + 1.
VerificationReport verify_serre_convergence(std::int64_t p, int k, std::size_t i_max,
                                            std::size_t N);

VerificationReport verify_umatrix_general(std::int64_t p, std::size_t i_max);
VerificationReport verify_umatrix_star(std::int64_t p, std::size_t i_max);

// Slopes of the two p = 2, 3 bound lines on v_p(a_i) and the index where
// s + slope_special i = slope_main i, when the main line is steeper.
struct BoundLines {
  BigRational main_slope;     // 12/(p-1) t/(t+1) rho
  BigRational special_offset;  // s
  BigRational special_slope;  // 12/(p-1) 1/(2p)
  std::optional<BigRational> crossover;
};

BoundLines bound_lines(std::int64_t p, int k);

// A sweep cell and the runner that evaluates many of them.
enum class SweepClaim {
  ThmA,
  ThmAKatz,
  Special,
  Congruence,
  Identities,
  CorUf,
  LemmaUi,
  EsVsF,
  Serre,
  UmatrixGeneral,
  UmatrixStar,
};

SweepClaim parse_sweep_claim(const std::string& text);
std::string to_string(SweepClaim c);

struct SweepOptions {
  std::size_t M = 20;
  std::optional<std::size_t> N;
  std::size_t i_max = 3;
};

struct SweepCell {
  SweepClaim claim;
  std::int64_t p;
  int k;  // ignored by identities and U-matrix cells

  friend auto operator<=>(const SweepCell&, const SweepCell&) = default;
};

bool cell_applicable(const SweepCell& cell);
VerificationReport run_cell(const SweepCell& cell, const SweepOptions& options);

// Runs the applicable cells on `jobs` worker threads; results are ordered by
// cell regardless of completion order. Inapplicable cells are skipped.
std::vector<VerificationReport> run_sweep(std::vector<SweepCell> cells,
                                          const SweepOptions& options, unsigned jobs);

}  // namespace oclab
