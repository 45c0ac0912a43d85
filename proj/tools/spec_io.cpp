#include "spec_io.hpp"

#include <fstream>
#include <set>

#include "ddim/errors.hpp"

namespace ddim::cli {

namespace {

using Poly = DeltaSigmaPolynomial;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw SpecError(path + "." + key, "missing");
  return obj.at(key);
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) throw SpecError(path, "expected a list of integers");
  if (j.size() != size)
    throw SpecError(path, "expected " + std::to_string(size) + " entries, got " +
                              std::to_string(j.size()));
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Coefficient parse_coeff(const json& j, const std::string& path,
                        const std::set<std::string>& constants, const Shape& shape) {
  if (j.is_number_integer()) return Coefficient(Rational(j.get<long>()));
  if (!j.is_string()) throw SpecError(path, "expected \"p/q\" or a constant name");
  std::string text = j.get<std::string>();
  try {
    return Coefficient(parse_rational(text));
  } catch (const ArgumentError&) {
  }
  bool negative = !text.empty() && text[0] == '-';
  std::string name = negative ? text.substr(1) : text;
  if (!constants.count(name))
    throw SpecError(path, "'" + text + "' is neither a rational nor a declared constant");
  Coefficient c = Coefficient::symbol({name, LambdaMonomial::identity(shape)});
  return negative ? Coefficient(-1) * c : c;
}

Poly parse_polynomial(const json& j, const std::string& path,
                      const std::shared_ptr<const Shape>& shape,
                      const std::set<std::string>& constants) {
  if (!j.is_array()) throw SpecError(path, "expected a list of terms");
  Poly out = Poly::constant(shape, 0);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    if (!term.is_object()) throw SpecError(tp, "expected an object");
    for (const auto& [key, value] : term.items())
      if (key != "coeff" && key != "delta" && key != "sigma" && key != "gen" && key != "power")
        throw SpecError(tp + "." + key, "unknown field");
    Coefficient c = term.contains("coeff")
                        ? parse_coeff(term.at("coeff"), tp + ".coeff", constants, *shape)
                        : Coefficient(1);
    if (!term.contains("gen")) {
      for (const char* key : {"delta", "sigma", "power"})
        if (term.contains(key)) throw SpecError(tp + "." + key, "constant terms take no " + std::string(key));
      out += Poly::constant(shape, c);
      continue;
    }
    const int gen = as_int(term.at("gen"), tp + ".gen");
    if (gen < 1 || gen > shape->s)
      throw SpecError(tp + ".gen", "generator index must lie in 1.." + std::to_string(shape->s));
    std::vector<int> k = term.contains("delta") ? int_list(term.at("delta"), tp + ".delta", shape->m())
                                                : std::vector<int>(shape->m(), 0);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] < 0) throw SpecError(tp + ".delta[" + std::to_string(i) + "]", "must be nonnegative");
    std::vector<int> l = term.contains("sigma") ? int_list(term.at("sigma"), tp + ".sigma", shape->n)
                                                : std::vector<int>(shape->n, 0);
    const int power = term.contains("power") ? as_int(term.at("power"), tp + ".power") : 1;
    if (power < 1) throw SpecError(tp + ".power", "must be at least 1");
    out += Poly::term(shape, {{k, l}, gen - 1}, c, power);
  }
  return out;
}

std::vector<Poly> parse_polynomial_list(const json& j, const std::string& path,
                                        const std::shared_ptr<const Shape>& shape,
                                        const std::set<std::string>& constants) {
  if (!j.is_array()) throw SpecError(path, "expected a list of polynomials");
  std::vector<Poly> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_polynomial(j[i], path + "[" + std::to_string(i) + "]", shape, constants));
  return out;
}

void parse_options(const json& j, DimensionOptions& options) {
  const std::string path = "$.options";
  if (!j.is_object()) throw SpecError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "." + key;
    if (key == "max_threshold") {
      options.max_threshold = as_int(value, p);
    } else if (key == "max_rounds") {
      options.max_rounds = as_int(value, p);
    } else if (key == "coherence_depth") {
      options.coherence_depth = as_int(value, p);
    } else if (key == "oracle_checks") {
      options.oracle_checks = as_int(value, p);
    } else if (key == "start_buffer") {
      options.oracle.start_buffer = as_int(value, p);
    } else if (key == "max_buffer") {
      options.oracle.max_buffer = as_int(value, p);
    } else if (key == "agreement") {
      options.oracle.agreement = as_int(value, p);
    } else if (key == "oracle_mode") {
      if (value == "specialize") options.oracle.mode = OracleMode::kSpecialize;
      else if (value == "symbolic") options.oracle.mode = OracleMode::kSymbolic;
      else throw SpecError(p, "expected \"specialize\" or \"symbolic\"");
    } else {
      throw SpecError(p, "unknown option");
    }
  }
  if (options.max_threshold < 1) throw SpecError(path + ".max_threshold", "must be positive");
  if (options.oracle.max_buffer < options.oracle.start_buffer || options.oracle.start_buffer < 0)
    throw SpecError(path + ".max_buffer", "buffers must satisfy 0 <= start_buffer <= max_buffer");
}

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

SpecDocument parse_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("$", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> known{"schema", "m", "partition", "n", "generators",
                                             "constants", "polynomials", "charset", "options"};
    if (!known.count(key)) throw SpecError("$." + key, "unknown field");
  }
  if (as_int(field(doc, "schema", "$"), "$.schema") != 1)
    throw SpecError("$.schema", "only schema 1 is supported");
  const int m = as_int(field(doc, "m", "$"), "$.m");
  const json& partition = field(doc, "partition", "$");
  if (!partition.is_array() || partition.empty())
    throw SpecError("$.partition", "expected a nonempty list of block sizes");
  std::vector<int> blocks = int_list(partition, "$.partition", partition.size());
  int total = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] < 0) throw SpecError("$.partition[" + std::to_string(i) + "]", "must be nonnegative");
    total += blocks[i];
  }
  if (total != m)
    throw SpecError("$.partition", "block sizes add up to " + std::to_string(total) +
                                       " but m = " + std::to_string(m));
  const int n = as_int(field(doc, "n", "$"), "$.n");
  if (n < 0) throw SpecError("$.n", "must be nonnegative");
  const int s = doc.contains("generators") ? as_int(doc.at("generators"), "$.generators") : 1;
  if (s < 1) throw SpecError("$.generators", "must be at least 1");

  SpecDocument out;
  auto shape = std::make_shared<const Shape>(Shape{blocks, n, s});
  out.extension.shape = shape;
  std::set<std::string> constants;
  if (doc.contains("constants")) {
    const json& c = doc.at("constants");
    if (!c.is_array()) throw SpecError("$.constants", "expected a list of names");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string p = "$.constants[" + std::to_string(i) + "]";
      if (!c[i].is_string() || c[i].get<std::string>().empty())
        throw SpecError(p, "expected a nonempty name");
      std::string name = c[i].get<std::string>();
      try {
        parse_rational(name);
        throw SpecError(p, "a constant name cannot be a number");
      } catch (const SpecError&) {
        throw;
      } catch (const ArgumentError&) {
      }
      if (name[0] == '-') throw SpecError(p, "a constant name cannot start with '-'");
      constants.insert(name);
      out.extension.constants.push_back(name);
    }
  }
  out.extension.polynomials =
      parse_polynomial_list(field(doc, "polynomials", "$"), "$.polynomials", shape, constants);
  if (doc.contains("charset"))
    out.extension.charset = parse_polynomial_list(doc.at("charset"), "$.charset", shape, constants);
  if (doc.contains("options")) parse_options(doc.at("options"), out.options);
  return out;
}

SpecDocument load_spec(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw SpecError(file, "cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(file, std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

json to_json(const NumericalPolynomial& f) {
  json binomial = json::array();
  for (const auto& [idx, c] : f.coeffs()) binomial.push_back({{"index", idx}, {"coeff", to_string(c)}});
  json monomial = json::array();
  for (const auto& [e, c] : f.to_monomials())
    monomial.push_back({{"exponents", e}, {"coeff", rational_text(c)}});
  return {{"bounds", f.degree_bounds()},
          {"binomial", binomial},
          {"monomial", monomial},
          {"text", format_monomial(f)}};
}

NumericalPolynomial polynomial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("bounds") || !j.contains("binomial"))
    throw SpecError("polynomial", "expected bounds and binomial coefficients");
  std::vector<int> bounds = j.at("bounds").get<std::vector<int>>();
  std::map<MultiIndex, Integer> coeffs;
  for (const auto& entry : j.at("binomial"))
    coeffs[entry.at("index").get<MultiIndex>()] = Integer(entry.at("coeff").get<std::string>());
  return NumericalPolynomial(bounds, coeffs);
}

json to_json(const DeltaSigmaPolynomial& a) {
  json out{{"text", to_string(a)}};
  if (!a.in_field()) {
    Leaders l = leaders(a);
    out["sigma_leader"] = to_string(l.sigma);
    json blocks = json::array();
    for (const Term& t : l.block) blocks.push_back(to_string(t));
    out["block_leaders"] = blocks;
    auto [initial, separant] = initial_separant(a);
    out["initial"] = to_string(initial);
    out["separant"] = to_string(separant);
  }
  return out;
}

std::string coherence_name(Coherence c) {
  switch (c) {
    case Coherence::kCertified: return "certified";
    case Coherence::kViolation: return "violation";
    case Coherence::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

json to_json(const CoherenceReport& rep) {
  json out{{"verdict", coherence_name(rep.verdict)},
           {"depth", rep.depth},
           {"structural_bound", rep.structural_bound}};
  if (rep.witness) out["witness"] = {{"polynomial", to_string(*rep.witness)}, {"origin", rep.witness_origin}};
  return out;
}

json to_json(const InvariantReport& rep) {
  json e_prime = json::array();
  for (const auto& [idx, c] : rep.e_prime) e_prime.push_back({{"index", idx}, {"coeff", to_string(c)}});
  json top = json::array();
  for (const auto& [idx, c] : rep.top_degree_coeffs) top.push_back({{"index", idx}, {"coeff", to_string(c)}});
  json out{{"top_index", rep.top_index},
           {"leading_coeff", to_string(rep.leading_coeff)},
           {"trdeg_candidate", rational_text(rep.trdeg_candidate)},
           {"leading_divisible", rep.leading_divisible},
           {"e_prime", e_prime},
           {"top_degree_coeffs", top}};
  out["total_degree"] = rep.total_degree ? json(*rep.total_degree) : json(nullptr);
  return out;
}

json to_json(const DimensionReport& report) {
  json charset = json::array();
  for (const auto& a : report.charset.elements) charset.push_back(to_json(a));
  json verification = json::array();
  for (const auto& vp : report.verification) {
    json row{{"r", vp.r},
             {"phi", rational_text(vp.phi)},
             {"u1", vp.counts.u1},
             {"u2", vp.counts.u2},
             {"pass", vp.pass}};
    row["oracle"] = vp.oracle ? json(*vp.oracle) : json(nullptr);
    verification.push_back(row);
  }
  return {{"phi", to_json(report.phi)},
          {"u1", to_json(report.u1)},
          {"u2", to_json(report.u2)},
          {"invariants", to_json(report.invariants)},
          {"charset", charset},
          {"charset_source", report.charset_source},
          {"coherence", to_json(report.coherence)},
          {"threshold", report.threshold},
          {"verification", verification}};
}

}  // namespace ddim::cli
