#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <tuple>

#include "builders.hpp"
#include "ddim/errors.hpp"
#include "ddim/nsets.hpp"
#include "spec_io.hpp"

using namespace ddim;
using namespace ddim::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << "  ["
            << secs << " s]";
  const std::string detail = out.detail.str();
  if (!detail.empty()) std::cout << "  -- " << detail;
  std::cout << std::endl;
}

std::vector<DimensionReport> all_reports;

void check_structure(const DimensionReport& report, const Shape& shape, Outcome& out,
                     const std::string& name) {
  for (int i = 0; i < shape.p(); ++i)
    out.require(report.phi.degree_in(i).value_or(0) <= shape.blocks[i],
                name + ": degree in t" + std::to_string(i + 1) + " too large");
  out.require(report.phi.degree_in(shape.p()).value_or(0) <= shape.n,
              name + ": degree in the last variable too large");
  Integer two_n = 1;
  for (int j = 0; j < shape.n; ++j) two_n *= 2;
  out.require(report.invariants.leading_coeff % two_n == 0, name + ": 2^n does not divide a_top");
}

void for_each_grid(const IntVec& origin, int width, const std::function<void(const IntVec&)>& fn) {
  IntVec r = origin;
  while (true) {
    fn(r);
    std::size_t k = 0;
    while (k < r.size() && r[k] == origin[k] + width) r[k] = origin[k], ++k;
    if (k == r.size()) return;
    ++r[k];
  }
}

IntVec stable_threshold(const std::vector<int>& blocks, const std::set<std::vector<int>>& pts) {
  IntVec out;
  int pos = 0;
  for (int b : blocks) {
    std::int64_t s = 0;
    for (int i = 0; i < b; ++i, ++pos) {
      int mx = 0;
      for (const auto& pt : pts) mx = std::max(mx, std::abs(pt[pos]));
      s += mx;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<int> random_partition(std::mt19937& rng, int m) {
  std::vector<int> blocks;
  std::uniform_int_distribution<int> coin(0, 1);
  int current = 1;
  for (int i = 1; i < m; ++i) {
    if (coin(rng)) {
      blocks.push_back(current);
      current = 1;
    } else {
      ++current;
    }
  }
  blocks.push_back(m == 0 ? 0 : current);
  return blocks;
}

NumericalPolynomial univariate_formula(int d) {
  const Rational dd = d;
  return monomial_form(1, {{{2}, dd / 2}, {{1}, -dd * (dd - 2) / 2},
                           {{0}, dd * (dd - 1) * (dd - 2) / 6}});
}

}  // namespace

int main() {
  const auto sh = make_shape({1, 1}, 1);
  const auto g1 = example_g1(sh);
  const std::vector<std::tuple<int, int, int>> params{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}};

  criterion(1, "shift-Laplace equation: analyze gives Phi and both U-count polynomials exactly",
            [&](Outcome& out) {
              auto start = std::chrono::steady_clock::now();
              cli::SpecDocument doc = cli::load_spec(DDIM_SPECS_DIR "/laplace_shift.json");
              DimensionReport report = dimension_polynomial(doc.extension, doc.options);
              double secs =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
              all_reports.push_back(report);
              auto phi = monomial_form(3, {{{1, 1, 0}, 1}, {{1, 0, 1}, 4}, {{0, 1, 1}, 4},
                                           {{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 0}, 1}});
              auto u1 = monomial_form(3, {{{1, 1, 0}, 1}, {{0, 1, 1}, 2}, {{1, 0, 0}, 1},
                                          {{0, 1, 0}, 1}, {{0, 0, 1}, 2}, {{0, 0, 0}, 1}});
              auto u2 = monomial_form(3, {{{1, 0, 1}, 4}, {{0, 1, 1}, 2}, {{0, 0, 1}, -2}});
              out.require(report.phi == phi, "Phi = " + format_monomial(report.phi));
              out.require(report.u1 == u1, "U1 = " + format_monomial(report.u1));
              out.require(report.u2 == u2, "U2 = " + format_monomial(report.u2));
              out.require(secs < 30, "took " + std::to_string(secs) + " s");
              out.detail << (out.pass ? "Phi = " + format_monomial(report.phi) : "");
            });

  criterion(2, "shift-Laplace equation: Phi = count_U = oracle on {4..8}^3", [&](Outcome& out) {
    auto start = std::chrono::steady_clock::now();
    DimensionReport report = dimension_polynomial(extension(sh, {g1}));
    int points = 0;
    for_each_grid({4, 4, 4}, 4, [&](const IntVec& r) {
      Rational phi = report.phi.evaluate(r);
      UCounts counts = count_U(report.charset, *sh, r);
      OracleResult o = trdeg_linear_box({g1}, r);
      ++points;
      if (phi != counts.total() || phi != o.trdeg || !o.stabilized)
        out.require(false, "r=" + to_string(r) + " Phi=" + to_string(phi) + " count=" +
                               std::to_string(counts.total()) + " oracle=" + std::to_string(o.trdeg));
    });
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(report.phi.evaluate({5, 5, 5}) == 236, "Phi(5,5,5) != 236");
    out.require(secs < 300, "took " + std::to_string(secs) + " s");
    if (out.pass) out.detail << points << " points agree, Phi(5,5,5) = 236";
  });

  criterion(3, "four-term family: leading coefficients 2c, 2(b+c), 2(a+c); the rest fixed by the oracle",
            [&](Outcome& out) {
              for (auto [a, b, c] : params) {
                const std::string name = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + ")";
                auto f = example_f(sh, a, b, c);
                DimensionReport report = dimension_polynomial(extension(sh, {f}));
                all_reports.push_back(report);
                auto mons = report.phi.to_monomials();
                out.require(report.invariants.total_degree == 2, name + ": degree is not 2");
                std::set<MultiIndex> top;
                for (const auto& [idx, coeff] : report.invariants.top_degree_coeffs) top.insert(idx);
                out.require(top == std::set<MultiIndex>{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}},
                            name + ": unexpected degree-2 support");
                out.require(mons[{1, 1, 0}] == 2 * c, name + ": t1t2 coefficient");
                out.require(mons[{1, 0, 1}] == 2 * (b + c), name + ": t1t3 coefficient");
                out.require(mons[{0, 1, 1}] == 2 * (a + c), name + ": t2t3 coefficient");
                // Eight points of a (1,1,1)-bounded polynomial fix every coefficient.
                for_each_grid(report.threshold, 1, [&](const IntVec& r) {
                  auto o = trdeg_linear_box({f}, r);
                  if (report.phi.evaluate(r) != o.trdeg)
                    out.require(false, name + ": oracle differs at " + to_string(r));
                });
                out.detail << name << " " << format_monomial(report.phi) << "; ";
              }
            });

  criterion(4, "univariate polynomial (D/2)t^2 - D(D-2)/2 t + D(D-1)(D-2)/6; two-term family matches it and is distinguished",
            [&](Outcome& out) {
              for (auto [a, b, c] : params) {
                const int d = a + b + c;
                const std::string name = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + ")";
                auto eta = extension(sh, {example_f(sh, a, b, c)});
                auto zeta = extension(sh, {example_zeta(sh, a + b, c)});
                auto ue = univariate_polynomial(eta);
                auto uz = univariate_polynomial(zeta);
                out.require(ue.phi == univariate_formula(d),
                            name + ": univariate " + format_monomial(ue.phi) + " vs formula " +
                                format_monomial(univariate_formula(d)));
                out.require(uz.phi == ue.phi, name + ": two-term univariate " +
                                                  format_monomial(uz.phi) + " differs");
                Comparison cmp = compare_extensions(eta, zeta);
                all_reports.push_back(cmp.second);
                out.require(cmp.distinguished,
                            name + ": invariants coincide (Phi_eta = " +
                                format_monomial(cmp.first.phi) + ", Phi_zeta = " +
                                format_monomial(cmp.second.phi) + ")");
              }
            });

  criterion(5, "combinatorics: omega_E = Card V_E and phi_A = Card W_A on 3-wide grids; empty-set closed forms",
            [&](Outcome& out) {
              std::mt19937 rng(20240611);
              int checked_points = 0;
              for (int trial = 0; trial < 200; ++trial) {
                std::uniform_int_distribution<int> mdist(1, 4), coord(0, 4), size(0, 4);
                const int m = mdist(rng);
                PointSetN e{{random_partition(rng, m), 0}, {}};
                for (int i = size(rng); i > 0; --i) {
                  std::vector<int> pt(m);
                  for (auto& x : pt) x = coord(rng);
                  e.points.insert(pt);
                }
                auto omega = omega_E(e);
                for_each_grid(stable_threshold(e.shape.blocks, e.points), 2, [&](const IntVec& r) {
                  ++checked_points;
                  if (omega.evaluate(r) != count_V_E(e, r))
                    out.require(false, "omega_E mismatch for trial " + std::to_string(trial) +
                                           " at " + to_string(r));
                });
              }
              for (int trial = 0; trial < 200; ++trial) {
                std::uniform_int_distribution<int> mdist(0, 2), ndist(1, 2), coord(-3, 3), size(0, 3);
                const int m = mdist(rng);
                const int n = ndist(rng);
                PointSetZ a{{random_partition(rng, m), n}, {}};
                if (m == 0) a.shape.blocks = {0};
                for (int i = size(rng); i > 0; --i) {
                  std::vector<int> pt(m + n);
                  for (int j = 0; j < m + n; ++j) pt[j] = j < m ? std::abs(coord(rng)) : coord(rng);
                  a.points.insert(pt);
                }
                auto phi = phi_A(a);
                std::vector<int> all_blocks = a.shape.blocks;
                all_blocks.push_back(n);
                IntVec origin = stable_threshold(all_blocks, a.points);
                origin.back() = 2 * origin.back() + 2 * n;
                for_each_grid(origin, 2, [&](const IntVec& r) {
                  ++checked_points;
                  if (phi.evaluate(r) != count_W_A(a, r))
                    out.require(false, "phi_A mismatch for trial " + std::to_string(trial) +
                                           " at " + to_string(r));
                });
              }
              for (const std::vector<int>& blocks :
                   std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}, {1, 1, 1}, {3}}) {
                PointSetN empty{{blocks, 0}, {}};
                MultiIndex idx(blocks.begin(), blocks.end());
                out.require(omega_E(empty) == NumericalPolynomial::basis_term(idx),
                            "omega of the empty set for blocks " + std::to_string(blocks.size()));
                for (int n = 0; n <= 2; ++n) {
                  PointSetZ none{{blocks, n}, {}};
                  auto phi = phi_A(none);
                  // Closed form: prod C(t_i+m_i, m_i) * sum_i (-1)^{n-i} 2^i C(n,i) C(t+i,i).
                  out.require(phi == free_phi(none.shape), "phi of the empty set differs from the closed form");
                  IntVec r(blocks.size() + 1, 2);
                  Rational expected = 1;
                  for (int b : blocks) expected *= binomial_poly(Integer(2 + b), b);
                  Rational sigma_part = 0;
                  for (int i = 0; i <= n; ++i) {
                    Integer term = binomial_poly(Integer(n), i) * binomial_poly(Integer(2 + i), i);
                    for (int j = 0; j < i; ++j) term *= 2;
                    sigma_part += ((n - i) % 2 ? -1 : 1) * Rational(term);
                  }
                  out.require(phi.evaluate(r) == expected * sigma_part &&
                                  phi.evaluate(r) == count_W_A(none, r),
                              "phi of the empty set does not count the box");
                }
              }
              if (out.pass) out.detail << checked_points << " grid points agree";
            });

  criterion(6, "Sigma' extraction of the worked example set", [&](Outcome& out) {
    std::set<MultiIndex> s{{3, 0, 2}, {2, 1, 1}, {0, 1, 4}, {1, 0, 3}, {1, 1, 6}, {3, 1, 0}, {1, 2, 0}};
    std::set<MultiIndex> expected{{3, 0, 2}, {3, 1, 0}, {1, 1, 6}, {1, 2, 0}};
    out.require(maximal_lex_elements(s) == expected, "wrong Sigma'");
  });

  criterion(7, "structural invariants on every report; free extensions have trdeg s", [&](Outcome& out) {
    for (int s = 1; s <= 3; ++s) {
      auto free_shape = make_shape({1, 1}, 1, s);
      DimensionReport report = dimension_polynomial(extension(free_shape, {}));
      check_structure(report, *free_shape, out, "free s=" + std::to_string(s));
      out.require(report.invariants.trdeg_candidate == s,
                  "free s=" + std::to_string(s) + ": trdeg " + to_string(report.invariants.trdeg_candidate));
    }
    auto plane = make_shape({2}, 2, 2);
    check_structure(dimension_polynomial(extension(plane, {})), *plane, out, "free m=2 n=2");
    for (std::size_t i = 0; i < all_reports.size(); ++i)
      check_structure(all_reports[i], *sh, out, "report " + std::to_string(i));
    if (out.pass) out.detail << all_reports.size() + 4 << " reports checked";
  });

  criterion(8, "characteristic sets: {A, alpha^-1 A}, coherence, reduction, redundant generator",
            [&](Outcome& out) {
              auto inv = LambdaMonomial::alpha(*sh, 0, -1);
              auto same_set = [](const AutoreducedSet& got, std::vector<Poly> want) {
                if (got.size() != want.size()) return false;
                for (const Poly& g : got.elements) {
                  auto it = std::find(want.begin(), want.end(), g);
                  if (it == want.end()) return false;
                  want.erase(it);
                }
                return true;
              };
              auto sigma = principal_charset(g1);
              out.require(same_set(sigma, {g1, apply_lambda(inv, g1)}), "principal_charset(g1)");
              out.require(is_coherent(sigma).verdict == Coherence::kCertified, "g1 set not certified");
              out.require(reduce(apply_lambda(LambdaMonomial::delta(*sh, 0), g1), sigma).remainder.is_zero(),
                          "delta_1 g1 does not reduce to zero");
              for (auto [a, b, c] : params) {
                auto f = example_f(sh, a, b, c);
                auto fs = principal_charset(f);
                out.require(same_set(fs, {f, apply_lambda(inv, f)}), "principal_charset(f)");
                out.require(is_coherent(fs).verdict == Coherence::kCertified, "f set not certified");
              }
              cli::SpecDocument doc = cli::load_spec(DDIM_SPECS_DIR "/redundant_generator.json");
              DimensionReport two = dimension_polynomial(doc.extension, doc.options);
              DimensionReport one = dimension_polynomial(extension(sh, {g1}));
              out.require(one.invariants.total_degree == two.invariants.total_degree &&
                              one.invariants.leading_coeff == two.invariants.leading_coeff &&
                              one.invariants.e_prime == two.invariants.e_prime &&
                              one.invariants.top_degree_coeffs == two.invariants.top_degree_coeffs,
                          "invariants change with the redundant generator: " +
                              format_monomial(one.phi) + " vs " + format_monomial(two.phi));
              all_reports.push_back(two);
            });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
