#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <utility>

#include "torustame/exactalg.hpp"

namespace torustame {

enum class Verdict { Tame, Untame };
enum class SystemKind { Semicascade, Cascade };

std::string_view to_string(Verdict v);
std::string_view to_string(SystemKind k);

/// Why a generator is untame.
enum class UntameReason {
  /// The x-stripped minimal polynomial has a repeated factor, so it cannot divide x^s - 1.
  NotSquarefree,
  /// x^s mod g != 1 for every s up to the order bound.
  OrderBoundExhausted,
  /// Cascade only: the minimal polynomial has x as a factor.
  ZeroEigenvalue,
  /// Cascade only: A^p = A^q holds but only with p > 0.
  PositiveIndex,
};

std::string_view to_string(UntameReason r);

struct UntameWitness {
  UntameReason reason;
  RatPoly stripped_min_poly;  // g with minpoly = x^k * g
  std::uint64_t order_bound;  // s_max(d) that was exhausted, or that applies
};

struct TamenessCertificate {
  Verdict verdict = Verdict::Untame;
  SystemKind kind = SystemKind::Semicascade;
  std::size_t index_k = 0;
  std::uint64_t period_s = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> minimal_pair;  // semicascade, tame
  std::optional<std::uint64_t> minimal_order_m;                        // cascade, tame
  std::optional<UntameWitness> witness;                                 // untame
};

struct OrderBoundTable {
  std::size_t d = 0;
  std::set<std::uint64_t> admissible_orders;  // n with phi(n) <= d
  std::uint64_t s_max = 1;
};

/// Largest dimension accepted by order_bound; the subset enumeration grows quickly beyond it.
inline constexpr std::size_t kMaxOrderBoundDim = 64;

std::uint64_t euler_phi(std::uint64_t n);

/// All n with phi(n) == m.
std::set<std::uint64_t> inverse_phi(std::uint64_t m);

/// Admissible cyclotomic orders for dimension d and the largest lcm of a set of
/// distinct admissible orders whose totients sum to at most d.
OrderBoundTable order_bound(std::size_t d);

/// Least s <= s_max with x^s = 1 modulo g, or nullopt.
std::optional<std::uint64_t> order_of_x_mod(const RatPoly& g, std::uint64_t s_max);

TamenessCertificate decide_semicascade(const IntMatrix& a);

/// Throws DeterminantNotUnit unless |det a| == 1.
TamenessCertificate decide_cascade(const IntMatrix& a);

struct OracleResult {
  Verdict verdict;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> minimal_pair;
};

/// Brute-force enumeration of A^0 .. A^(d + s_max), stopping at the first repeat.
OracleResult oracle_semicascade(const IntMatrix& a);

/// Re-verifies every claim of c against a by exact computation.
bool certificate_check(const IntMatrix& a, const TamenessCertificate& c);

}  // namespace torustame
