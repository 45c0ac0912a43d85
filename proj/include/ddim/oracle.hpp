#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ddim/arith.hpp"
#include "ddim/ddpoly.hpp"

namespace ddim {

/// Finite set of terms lambda y_j: either the box ord_i <= r_i (i = 1..p), ord_sigma <= r_{p+1},
/// or the ball ord <= r_1 used by the univariate polynomial.
struct Region {
  enum class Kind { kBox, kBall };
  Kind kind = Kind::kBox;
  IntVec r;

  static Region box(IntVec r) { return {Kind::kBox, std::move(r)}; }
  static Region ball(std::int64_t t) { return {Kind::kBall, {t}}; }

  /// Membership after enlarging every bound by buffer.
  bool contains(const LambdaMonomial& lambda, const Shape& shape, std::int64_t buffer = 0) const;
  /// Number of monomials lambda in the region (multiply by s for terms).
  std::int64_t monomial_count(const Shape& shape) const;
  void validate(const Shape& shape) const;
};

enum class OracleMode { kSpecialize, kSymbolic };

struct OracleOptions {
  OracleMode mode = OracleMode::kSpecialize;
  int start_buffer = 0;
  int max_buffer = 8;
  /// Number of consecutive buffers that must agree.
  int agreement = 2;
  std::array<std::uint64_t, 2> seeds{0x5eed0001, 0x5eed0002};
};

struct OracleResult {
  std::int64_t trdeg = 0;
  std::int64_t region_terms = 0;
  std::int64_t relations = 0;
  int buffer = 0;
  bool stabilized = false;
  std::size_t rows = 0;
  std::size_t columns = 0;
};

/// Transcendence degree of K(lambda eta_j : lambda y_j in the region) for the linear
/// system, as (terms in the region) minus (independent linear relations among them). The
/// relations come from the consequences lambda A whose terms all lie in the region grown by
/// the buffer; the buffer grows until `agreement` consecutive values coincide.
/// Throws NonlinearError for nonlinear input and OracleError if two specializations of
/// the symbols disagree.
OracleResult trdeg_linear(const std::vector<DeltaSigmaPolynomial>& system, const Region& region,
                          const OracleOptions& options = {});

OracleResult trdeg_linear_box(const std::vector<DeltaSigmaPolynomial>& system, const IntVec& r,
                              const OracleOptions& options = {});

/// One evaluation at a fixed buffer, without the stabilization loop.
OracleResult trdeg_at_buffer(const std::vector<DeltaSigmaPolynomial>& system,
                             const Region& region, int buffer, const OracleOptions& options = {});

}  // namespace ddim
