#include <iostream>

#include "CLI11.hpp"
#include "ddim/errors.hpp"
#include "spec_io.hpp"

using namespace ddim;
using namespace ddim::cli;

namespace {

struct Flags {
  std::string format = "human";
  std::string basis = "monomial";
  int max_threshold = 0;
  std::string oracle_mode;
  bool univariate = false;
};

std::string show(const NumericalPolynomial& f, const Flags& flags) {
  return flags.basis == "binomial" ? format_binomial(f) : format_monomial(f);
}

void apply_flags(SpecDocument& doc, const Flags& flags) {
  if (flags.max_threshold > 0) doc.options.max_threshold = flags.max_threshold;
  if (flags.oracle_mode == "symbolic") doc.options.oracle.mode = OracleMode::kSymbolic;
  if (flags.oracle_mode == "specialize") doc.options.oracle.mode = OracleMode::kSpecialize;
}

void check_tuple(const IntVec& r, const Shape& shape, const std::string& flag) {
  if (r.size() != static_cast<std::size_t>(shape.p() + 1))
    throw SpecError(flag, "expected " + std::to_string(shape.p() + 1) + " values");
  for (auto x : r)
    if (x < 0) throw SpecError(flag, "values must be nonnegative");
}

void print_invariants(const InvariantReport& rep) {
  std::cout << "degree d = " << (rep.total_degree ? std::to_string(*rep.total_degree) : "-inf")
            << "\n";
  std::cout << "a" << to_string(rep.top_index) << " = " << rep.leading_coeff
            << "  (trdeg " << rep.trdeg_candidate << ")\n";
  std::cout << "E' =";
  for (const auto& [idx, c] : rep.e_prime) std::cout << " " << to_string(idx) << ":" << c;
  std::cout << "\ndegree-d coefficients =";
  for (const auto& [idx, c] : rep.top_degree_coeffs) std::cout << " " << to_string(idx) << ":" << c;
  std::cout << "\n";
}

void print_charset(const AutoreducedSet& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& a = set.elements[i];
    Leaders l = leaders(a);
    std::cout << "A" << i + 1 << " = " << to_string(a) << "\n    sigma-leader " << to_string(l.sigma);
    for (std::size_t b = 0; b < l.block.size(); ++b)
      std::cout << ", " << b + 1 << "-leader " << to_string(l.block[b]);
    std::cout << "\n";
  }
}

int run_analyze(const std::string& file, const Flags& flags) {
  SpecDocument doc = load_spec(file);
  apply_flags(doc, flags);
  DimensionReport report = dimension_polynomial(doc.extension, doc.options);
  std::optional<UnivariateResult> uni;
  if (flags.univariate) uni = univariate_polynomial(doc.extension, doc.options);
  if (flags.format == "machine") {
    json out = to_json(report);
    out["schema"] = 1;
    out["command"] = "analyze";
    if (uni) out["univariate"] = to_json(uni->phi);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "Phi = " << show(report.phi, flags) << "\n";
  std::cout << "U1  = " << show(report.u1, flags) << "\n";
  std::cout << "U2  = " << show(report.u2, flags) << "\n";
  print_invariants(report.invariants);
  std::cout << "characteristic set (" << report.charset_source << ", coherence "
            << coherence_name(report.coherence.verdict) << " at depth " << report.coherence.depth
            << "):\n";
  print_charset(report.charset);
  std::cout << "threshold " << to_string(report.threshold) << "\n";
  for (const auto& vp : report.verification) {
    std::cout << "  r=" << to_string(vp.r) << " Phi=" << vp.phi << " U1=" << vp.counts.u1
              << " U2=" << vp.counts.u2;
    if (vp.oracle) std::cout << " oracle=" << *vp.oracle;
    std::cout << (vp.pass ? " ok" : " MISMATCH") << "\n";
  }
  if (uni) std::cout << "univariate = " << show(uni->phi, flags) << "\n";
  return 0;
}

int run_invariants(const std::string& file, const Flags& flags) {
  SpecDocument doc = load_spec(file);
  apply_flags(doc, flags);
  DimensionReport report = dimension_polynomial(doc.extension, doc.options);
  if (flags.format == "machine") {
    json out{{"schema", 1}, {"command", "invariants"}, {"invariants", to_json(report.invariants)}};
    std::cout << out.dump(2) << "\n";
  } else {
    print_invariants(report.invariants);
  }
  return 0;
}

int run_count(const std::string& file, const IntVec& r, const Flags& flags) {
  SpecDocument doc = load_spec(file);
  apply_flags(doc, flags);
  check_tuple(r, *doc.extension.shape, "--r");
  DimensionReport report = dimension_polynomial(doc.extension, doc.options);
  UCounts c = count_U(report.charset, *doc.extension.shape, r);
  if (flags.format == "machine") {
    json out{{"schema", 1}, {"command", "count"}, {"r", r}, {"u1", c.u1}, {"u2", c.u2}, {"total", c.total()}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "U1=" << c.u1 << " U2=" << c.u2 << " total=" << c.total() << "\n";
  }
  return 0;
}

int run_oracle(const std::string& file, const IntVec& r, const Flags& flags) {
  SpecDocument doc = load_spec(file);
  apply_flags(doc, flags);
  check_tuple(r, *doc.extension.shape, "--r");
  std::vector<DeltaSigmaPolynomial> system;
  for (const auto& a : doc.extension.polynomials)
    if (!a.is_zero()) system.push_back(a);
  if (system.empty()) system.push_back(DeltaSigmaPolynomial::constant(doc.extension.shape, 0));
  OracleResult o = trdeg_linear_box(system, r, doc.options.oracle);
  if (flags.format == "machine") {
    json out{{"schema", 1}, {"command", "oracle"}, {"r", r}, {"trdeg", o.trdeg},
             {"relations", o.relations}, {"region_terms", o.region_terms}, {"buffer", o.buffer},
             {"stabilized", o.stabilized}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << o.trdeg << "\n";
    if (!o.stabilized) std::cerr << "warning: oracle did not stabilize by buffer " << o.buffer << "\n";
  }
  return 0;
}

int run_compare(const std::string& a, const std::string& b, const Flags& flags) {
  SpecDocument da = load_spec(a);
  SpecDocument db = load_spec(b);
  apply_flags(da, flags);
  Comparison cmp = compare_extensions(da.extension, db.extension, da.options);
  if (flags.format == "machine") {
    json out{{"schema", 1},
             {"command", "compare"},
             {"distinguished", cmp.distinguished},
             {"differences", cmp.differences},
             {"polynomials_equal", cmp.polynomials_equal},
             {"first", to_json(cmp.first)},
             {"second", to_json(cmp.second)}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "first:  Phi = " << show(cmp.first.phi, flags) << "\n";
  std::cout << "second: Phi = " << show(cmp.second.phi, flags) << "\n";
  if (cmp.distinguished) {
    for (const auto& d : cmp.differences) std::cout << "DISTINGUISHED: " << d << "\n";
  } else {
    std::cout << "INDISTINGUISHABLE by d, a_top, E' and the degree-d coefficients"
              << (cmp.polynomials_equal ? " (the polynomials coincide)" : "") << "\n";
  }
  return 0;
}

int run_table(const std::string& file, const IntVec& box, const Flags& flags) {
  SpecDocument doc = load_spec(file);
  apply_flags(doc, flags);
  check_tuple(box, *doc.extension.shape, "--box");
  StrengthTable table = strength_table(doc.extension, box, doc.options);
  if (flags.format == "machine") {
    json rows = json::array();
    for (const auto& row : table.rows)
      rows.push_back({{"r", row.r}, {"phi", row.phi.get_str()}, {"oracle", row.counted}, {"agree", row.agree}});
    json out{{"schema", 1}, {"command", "table"}, {"phi", to_json(table.phi)}, {"rows", rows}};
    out["threshold"] = table.threshold ? json(*table.threshold) : json(nullptr);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "Phi = " << show(table.phi, flags) << "\n";
  for (const auto& row : table.rows)
    std::cout << to_string(row.r) << "  Phi=" << row.phi << "  oracle=" << row.counted
              << (row.agree ? "" : "  *") << "\n";
  std::cout << "agreement for all r >= "
            << (table.threshold ? std::to_string(*table.threshold) : std::string("(none in box)"))
            << "\n";
  return 0;
}

int run_charset(const std::string& file, const Flags& flags) {
  SpecDocument doc = load_spec(file);
  apply_flags(doc, flags);
  DimensionOptions options = doc.options;
  options.run_oracle = false;
  DimensionReport report = dimension_polynomial(doc.extension, options);
  if (flags.format == "machine") {
    json set = json::array();
    for (const auto& a : report.charset.elements) set.push_back(to_json(a));
    json out{{"schema", 1}, {"command", "charset"}, {"charset", set},
             {"source", report.charset_source}, {"coherence", to_json(report.coherence)}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "source " << report.charset_source << ", coherence "
            << coherence_name(report.coherence.verdict) << " at depth " << report.coherence.depth
            << " (structural bound " << report.coherence.structural_bound << ")\n";
  print_charset(report.charset);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension polynomials of difference-differential field extensions"};
  app.require_subcommand(1);
  Flags flags;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--basis", flags.basis, "Polynomial basis for printing")
        ->check(CLI::IsMember({"monomial", "binomial"}));
    sub->add_option("--max-threshold", flags.max_threshold, "Cap on interpolation thresholds")
        ->check(CLI::PositiveNumber);
    sub->add_option("--oracle-mode", flags.oracle_mode, "Rank computation of the oracle")
        ->check(CLI::IsMember({"specialize", "symbolic"}));
  };
  std::string spec_a, spec_b;
  IntVec r, box;

  auto* analyze = app.add_subcommand("analyze", "Dimension polynomial with full report");
  analyze->add_option("spec", spec_a, "Spec file")->required();
  analyze->add_flag("--univariate", flags.univariate, "Also compute the univariate polynomial");
  auto* inv = app.add_subcommand("invariants", "Generator-independent invariants only");
  inv->add_option("spec", spec_a, "Spec file")->required();
  auto* count = app.add_subcommand("count", "Card U1 and Card U2 at r");
  count->add_option("spec", spec_a, "Spec file")->required();
  count->add_option("--r", r, "Orders r_1..r_{p+1}")->required();
  auto* oracle = app.add_subcommand("oracle", "Transcendence degree by linear algebra at r");
  oracle->add_option("spec", spec_a, "Spec file")->required();
  oracle->add_option("--r", r, "Orders r_1..r_{p+1}")->required();
  auto* compare = app.add_subcommand("compare", "Compare the invariants of two extensions");
  compare->add_option("first", spec_a, "Spec file")->required();
  compare->add_option("second", spec_b, "Spec file")->required();
  auto* table = app.add_subcommand("table", "Strength table against oracle counts");
  table->add_option("spec", spec_a, "Spec file")->required();
  table->add_option("--box", box, "Upper corner of the box")->required();
  auto* charset = app.add_subcommand("charset", "Characteristic set with leaders");
  charset->add_option("spec", spec_a, "Spec file")->required();
  for (auto* sub : {analyze, inv, count, oracle, compare, table, charset}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return run_analyze(spec_a, flags);
    if (inv->parsed()) return run_invariants(spec_a, flags);
    if (count->parsed()) return run_count(spec_a, r, flags);
    if (oracle->parsed()) return run_oracle(spec_a, r, flags);
    if (compare->parsed()) return run_compare(spec_a, spec_b, flags);
    if (table->parsed()) return run_table(spec_a, box, flags);
    if (charset->parsed()) return run_charset(spec_a, flags);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NonlinearError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InconsistentSystemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
