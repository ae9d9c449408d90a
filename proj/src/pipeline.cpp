#include "blockcalc/pipeline.hpp"

#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "blockcalc/errors.hpp"
#include "blockcalc/matalg.hpp"
#include "json.hpp"

namespace blockcalc::pipeline {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const json& need(const json& o, const char* key, const std::string& path) {
  if (!o.is_object()) schema(path, "expected an object");
  auto it = o.find(key);
  if (it == o.end()) schema(path, std::string("missing \"") + key + "\"");
  return *it;
}

long need_long(const json& o, const char* key, const std::string& path) {
  const json& v = need(o, key, path);
  if (!v.is_number_integer()) schema(path + "." + key, "expected an integer");
  return v.get<long>();
}

Rat json_rat(const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
  } catch (const std::exception& e) {
    schema(path, e.what());
  }
  schema(path, "expected an integer or a fraction string");
}

csa::PlaceQ parse_place(const std::string& s, const std::string& path) {
  if (s == "inf") return csa::PlaceQ::real();
  try {
    Int p(s);
    if (p < 2 || !is_prime(p)) schema(path, "not a prime: " + s);
    return csa::PlaceQ::at(p);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception&) {
    schema(path, "unreadable place: " + s);
  }
}

}  // namespace

IsogenyDatum parse_datum(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    schema("$", e.what());
  }
  IsogenyDatum d;

  // group
  const json& jg = need(j, "group", "$");
  long order = need_long(jg, "order", "$.group");
  const json& jt = need(jg, "table", "$.group");
  if (!jt.is_array() || static_cast<long>(jt.size()) != order)
    schema("$.group.table", "expected " + std::to_string(order) + " rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : jt) {
    if (!row.is_array() || static_cast<long>(row.size()) != order)
      schema("$.group.table", "ragged row");
    std::vector<int> r;
    for (const auto& e : row) {
      if (!e.is_number_integer() || e.get<long>() < 0 || e.get<long>() >= order)
        schema("$.group.table", "entry out of range");
      r.push_back(e.get<int>());
    }
    table.push_back(std::move(r));
  }
  cohom::FiniteGroup group;
  try {
    group = cohom::FiniteGroup::from_table(std::move(table));
  } catch (const CocycleInvalid& e) {
    schema("$.group.table", e.what());
  }

  // basis
  const json& jb = need(j, "basis", "$");
  if (!jb.is_array()) schema("$.basis", "expected an array");
  cohom::CoefficientBasis basis;
  basis.torsion_conductor = 2;
  for (size_t i = 0; i < jb.size(); ++i) {
    if (!jb[i].is_string()) schema("$.basis", "expected strings");
    std::string s = jb[i].get<std::string>();
    if (s == "-1") {
      if (i != 0) schema("$.basis", "\"-1\" must come first");
      continue;
    }
    Rat r = json_rat(jb[i], "$.basis");
    if (den(r) != 1 || num(r) < 2 || !is_prime(num(r)))
      schema("$.basis", "free basis elements must be primes: " + s);
    basis.elements.push_back(r);
  }

  // cocycle
  const json& jc = need(j, "cocycle", "$");
  if (!jc.is_array() || static_cast<long>(jc.size()) != order)
    schema("$.cocycle", "expected " + std::to_string(order) + " rows");
  cohom::Cocycle2 c;
  c.group = group;
  c.basis = basis;
  for (const auto& row : jc) {
    if (!row.is_array() || static_cast<long>(row.size()) != order)
      schema("$.cocycle", "ragged row");
    std::vector<cohom::MultiplicativeValue> vr;
    for (const auto& e : row) {
      cohom::MultiplicativeValue v;
      v.torsion = need_long(e, "torsion", "$.cocycle[][]") % basis.torsion_conductor;
      if (v.torsion < 0) v.torsion += basis.torsion_conductor;
      const json& ex = need(e, "exponents", "$.cocycle[][]");
      if (!ex.is_array() || ex.size() != basis.elements.size())
        schema("$.cocycle[][].exponents", "expected " + std::to_string(basis.elements.size()) +
                                              " exponents");
      for (const auto& x : ex) {
        if (!x.is_number_integer()) schema("$.cocycle[][].exponents", "expected integers");
        v.exponents.push_back(x.get<long>());
      }
      vr.push_back(std::move(v));
    }
    c.table.push_back(std::move(vr));
  }
  auto verdict = cohom::is_cocycle(c);
  if (!verdict.ok)
    throw CocycleInvalid("cocycle condition fails at (" + std::to_string(verdict.sigma) + ", " +
                         std::to_string(verdict.tau) + ", " + std::to_string(verdict.rho) +
                         "): " + verdict.reason);
  d.cocycle = std::move(c);

  // algebra: structure constants and/or an explicit ramification list
  bool have_alg = j.contains("algebra");
  bool have_ram = j.contains("ramified");
  if (!have_alg && !have_ram) schema("$", "need \"algebra\" or \"ramified\"");
  if (have_alg) {
    const json& ja = j.at("algebra");
    Rat a = json_rat(need(ja, "a", "$.algebra"), "$.algebra.a");
    Rat b = json_rat(need(ja, "b", "$.algebra"), "$.algebra.b");
    if (a == 0 || b == 0) schema("$.algebra", "structure constants must be nonzero");
    d.algebra = csa::QuaternionAlgebraQ(a, b);
    d.ramification = csa::ramification_data(*d.algebra);
  }
  if (have_ram) {
    const json& jr = j.at("ramified");
    if (!jr.is_array()) schema("$.ramified", "expected an array of places");
    csa::RamificationData ram;
    for (const auto& e : jr) {
      if (!e.is_string()) schema("$.ramified", "expected place strings");
      ram.ramified.insert(parse_place(e.get<std::string>(), "$.ramified"));
    }
    if (ram.ramified.size() % 2 != 0) schema("$.ramified", "odd number of ramified places");
    ram.schur_index = ram.ramified.empty() ? 1 : 2;
    if (have_alg && !(ram.ramified == d.ramification.ramified))
      schema("$.ramified", "declared places contradict the structure constants");
    d.ramification = std::move(ram);
  }

  // flags
  const json& jf = need(j, "flags", "$");
  const json& real = need(jf, "k_has_real_embedding", "$.flags");
  if (!real.is_boolean()) schema("$.flags.k_has_real_embedding", "expected a boolean");
  d.k_has_real_embedding = real.get<bool>();
  const json& at = need(jf, "albert_type", "$.flags");
  if (!at.is_string()) schema("$.flags.albert_type", "expected a string");
  try {
    d.albert_type = classify::albert_from_string(at.get<std::string>());
  } catch (const std::invalid_argument& e) {
    schema("$.flags.albert_type", e.what());
  }
  d.f = need_long(jf, "f", "$.flags");
  d.t = need_long(jf, "t", "$.flags");
  d.dim_b = need_long(jf, "dim_B", "$.flags");
  if (d.t != d.ramification.schur_index)
    schema("$.flags.t", "declared Schur index " + std::to_string(d.t) +
                            " contradicts the ramification data (t = " +
                            std::to_string(d.ramification.schur_index) + ")");
  try {
    classify::validate({d.f, d.t, d.albert_type,
                        d.albert_type != classify::AlbertType::IV, d.dim_b});
  } catch (const std::invalid_argument& e) {
    schema("$.flags", e.what());
  }
  return d;
}

namespace {

// Primitive element of the subfield of Q(zeta_N) fixed exactly by H.
cyclo::CyclotomicElement primitive_element(long N, const std::vector<long>& H) {
  if (N <= 2 || static_cast<long>(H.size()) == cyclo::phi(N))
    return cyclo::from_rational(Rat(1), 1);
  auto fixes_exactly = [&](const cyclo::CyclotomicElement& th) {
    return cyclo::generated_subfield({th}, N).fixing_subgroup == H;
  };
  // Gaussian periods over H of powers of zeta_N
  for (long jj = 1; jj < N; ++jj) {
    cyclo::CyclotomicElement th = cyclo::from_rational(Rat(0), N);
    for (long a : H) th = cyclo::add(th, cyclo::zeta(N, (a * jj) % N));
    if (fixes_exactly(th)) return th;
  }
  // deterministic fallback: traces of small combinations
  unsigned long seed = 0xC0FFEE11;
  for (int trial = 0; trial < 60; ++trial) {
    cyclo::CyclotomicElement x = cyclo::from_rational(Rat(0), N);
    for (long i = 1; i < N; ++i) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      long coef = static_cast<long>((seed >> 33) % 4);
      if (coef)
        x = cyclo::add(x, cyclo::mul(cyclo::from_rational(Rat(coef), N), cyclo::zeta(N, i)));
    }
    cyclo::CyclotomicElement th = cyclo::from_rational(Rat(0), N);
    for (long a : H) th = cyclo::add(th, cyclo::galois_act(a, x));
    if (fixes_exactly(th)) return th;
  }
  throw PipelineInvariantViolation("no primitive element found for E_beta");
}

// Monic minimal polynomial of theta over Q: product over H-cosets.
std::vector<Rat> minimal_polynomial(const cyclo::CyclotomicElement& theta, long N,
                                    const std::vector<long>& H) {
  std::vector<long> reps;
  std::vector<char> seen(std::max(2L, N), 0);
  for (long a = 1; a < std::max(2L, N); ++a) {
    if (N > 1 && std::gcd(a, N) != 1) continue;
    if (seen[a]) continue;
    reps.push_back(a);
    for (long h : H) seen[(a * h) % std::max(2L, N)] = 1;
  }
  std::vector<cyclo::CyclotomicElement> poly{cyclo::from_rational(Rat(1), N)};  // leading 1
  for (long r : reps) {
    cyclo::CyclotomicElement root = cyclo::galois_act(r, cyclo::embed(theta, N));
    std::vector<cyclo::CyclotomicElement> next(poly.size() + 1, cyclo::from_rational(Rat(0), N));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = cyclo::add(next[i + 1], poly[i]);                       // x * coeff
      next[i] = cyclo::sub(next[i], cyclo::mul(root, poly[i]));             // -root * coeff
    }
    poly = std::move(next);
  }
  std::vector<Rat> out;  // constant term first
  for (const auto& cf : poly) {
    if (!cf.is_rational())
      throw PipelineInvariantViolation("minimal polynomial has irrational coefficients");
    out.push_back(cf.rational_part());
  }
  return out;
}

std::vector<Rat> flat_coeffs(const cyclo::CyclotomicElement& x, long N) {
  auto e = cyclo::embed(x, N);
  std::vector<Rat> v(cyclo::phi(N), Rat(0));
  for (size_t i = 0; i < e.coeffs.size() && i < v.size(); ++i) v[i] = e.coeffs[i];
  return v;
}

std::string bool_word(bool b) { return b ? "true" : "false"; }

}  // namespace

ClassificationReport run_pipeline(const IsogenyDatum& din) {
  ClassificationReport r;
  auto note = [&](const char* s, std::string summary) {
    r.stages.push_back({s, std::move(summary)});
  };

  // (1) ramification and the least splitting cyclotomic conductor
  long cap = 10000;
  if (const char* e = std::getenv("BLOCKCALC_MODULUS_CAP"))
    cap = std::max(1L, std::atol(e));
  for (const auto& v : din.ramification.ramified)
    r.ramified_places.push_back(csa::place_name(v));
  r.t = din.ramification.schur_index;
  r.m_cyc = csa::min_cyclotomic_splitting(din.ramification, cap);
  note("ramification", "t = " + std::to_string(r.t) + ", m_cyc = " + std::to_string(r.m_cyc));

  // (2) order of the cocycle class with a canonical witness
  auto cls = cohom::class_order(din.cocycle);
  r.m = cls.m;
  if (cls.m > 2)
    throw UnsupportedClassOrder(static_cast<int>(cls.m));
  for (const auto& w : cls.witness)
    r.witness_d.push_back(format_rat(cohom::mv_to_rational(din.cocycle.basis, w)));
  note("class_order", "m = " + std::to_string(r.m));

  // (3) exact splitting map at the least workable conductor
  long w0 = din.cocycle.basis.torsion_conductor;
  if (cls.m == 2)
    for (const auto& w : cls.witness)
      w0 = cyclo::lcm_long(
          w0, cyclo::sqrt_as_cyclotomic(cohom::mv_to_rational(din.cocycle.basis, w)).first);
  cohom::SplittingMap beta;
  bool found = false;
  for (long mult : {1, 2, 3, 4, 6, 8, 12, 24}) {
    try {
      beta = cohom::split_cocycle(din.cocycle, w0 * mult);
      found = true;
      break;
    } catch (const InsufficientCoefficients&) {
    }
  }
  if (!found)
    throw InsufficientCoefficients("no splitting map within conductor " + std::to_string(24 * w0));
  if (!cohom::splits_cocycle(beta, din.cocycle))
    throw PipelineInvariantViolation("splitting map fails its own coboundary check");
  note("split_cocycle", "conductor " + std::to_string(beta.conductor));

  // (4) adjust so that zeta_{m_cyc} lands in E_beta
  auto adj = cohom::adjust_splitting_map(beta, din.cocycle, r.m_cyc, cls.m, cls.witness);
  r.chi_order = adj.chi_order;
  r.epsilon_order = adj.epsilon.order();
  r.beta_conductor = adj.beta.conductor;
  for (const auto& v : adj.beta.values) r.beta_values.push_back(cyclo::coeff_strings(v));
  if (!cohom::splits_cocycle(adj.beta, adj.inflated))
    throw PipelineInvariantViolation("adjusted map no longer splits the inflated cocycle");
  note("adjust", "chi order " + std::to_string(r.chi_order) + ", group order " +
                     std::to_string(adj.beta.group.order));

  // (5) E_beta with the zeta_{m_cyc} postcondition
  auto info = cohom::splitting_field_of(adj.beta);
  r.e_beta_conductor = info.conductor;
  r.e_beta_degree = info.degree;
  r.e_beta_fixing = info.fixing_subgroup;
  {
    long cond = cyclo::lcm_long(info.conductor, r.m_cyc);
    auto big = cyclo::generated_subfield(adj.beta.values, cond);
    auto zn = cyclo::embed(cyclo::zeta(r.m_cyc), cond);
    for (long a : big.fixing_subgroup)
      if (!cyclo::eq(cyclo::galois_act(a, zn), zn))
        throw PipelineInvariantViolation("zeta_{m_cyc} escaped E_beta");
  }
  note("E_beta", "degree " + std::to_string(r.e_beta_degree) + " at conductor " +
                     std::to_string(r.e_beta_conductor));

  // (6) E_beta must split the algebra
  csa::AbelianFieldSpec espec{r.e_beta_conductor, r.e_beta_fixing};
  r.splits_verdict = csa::splits(din.ramification, espec);
  if (!r.splits_verdict)
    throw PipelineInvariantViolation("E_beta fails to split the algebra");
  note("splits", bool_word(r.splits_verdict));

  // (7) descent identity through a companion embedding of E_beta
  long N = r.e_beta_conductor;
  long deg = r.e_beta_degree;
  auto theta = primitive_element(N, r.e_beta_fixing);
  auto minpoly = minimal_polynomial(theta, N, r.e_beta_fixing);
  if (static_cast<long>(minpoly.size()) != deg + 1)
    throw PipelineInvariantViolation("primitive element has the wrong degree");
  matalg::Ambient amb{deg, false, Rat(-1), Rat(-1)};
  matalg::MatrixOverB comp = matalg::companion_embedding(minpoly, deg);
  // powers of theta as a Q-basis of E_beta
  long nph = cyclo::phi(N);
  std::vector<std::vector<Rat>> pow_mat(nph, std::vector<Rat>(deg, Rat(0)));
  {
    cyclo::CyclotomicElement p = cyclo::from_rational(Rat(1), N);
    for (long c = 0; c < deg; ++c) {
      auto fc = flat_coeffs(p, N);
      for (long rr = 0; rr < nph; ++rr) pow_mat[rr][c] = fc[rr];
      p = cyclo::mul(p, cyclo::embed(theta, N));
    }
  }
  std::map<int, matalg::MatrixOverB> images;
  for (int s = 0; s < adj.beta.group.order; ++s) {
    auto coords = matalg::solve_linear(pow_mat, flat_coeffs(adj.beta.values[s], N));
    if (!coords)
      throw PipelineInvariantViolation("beta value escapes the span of E_beta powers");
    matalg::MatrixOverB img = matalg::mat_zero(deg);
    matalg::MatrixOverB cpow = matalg::mat_identity(deg);
    for (long p = 0; p < deg; ++p) {
      img = matalg::mat_add(img, matalg::mat_scale((*coords)[p], cpow));
      cpow = matalg::mat_mul(amb, cpow, comp);
    }
    images.emplace(s, std::move(img));
  }
  r.descent_ok = matalg::descent_cocycle_check(adj.inflated, amb, images);
  if (!r.descent_ok) throw PipelineInvariantViolation("descent identity fails");
  note("descent", bool_word(r.descent_ok));

  // (8) double-centralizer dimension identity for the embedded field
  auto sub = matalg::make_subalgebra(amb, {comp});
  if (sub.dim() != deg) throw PipelineInvariantViolation("companion field has wrong dimension");
  r.double_centralizer_ok = matalg::verify_double_centralizer(sub);
  if (!r.double_centralizer_ok)
    throw PipelineInvariantViolation("double-centralizer identity fails");
  note("double_centralizer", bool_word(r.double_centralizer_ok));

  // (9) classification bookkeeping
  classify::EndomorphismDatum ed{din.f, din.t, din.albert_type,
                                 din.albert_type != classify::AlbertType::IV, din.dim_b};
  r.f = din.f;
  r.dim_b = din.dim_b;
  r.building_block = classify::building_block_check(ed);
  auto shape = classify::dimension_bookkeeping(ed, r.e_beta_degree);
  r.dim_a = shape.dim_a;
  r.n = shape.n;
  r.field_degree = shape.field_degree;
  r.gl2_type = classify::is_gl2_type(shape) && r.building_block;
  if (r.building_block && r.dim_a != r.n * r.dim_b)
    throw PipelineInvariantViolation("dimension bookkeeping disagrees with dim B");
  r.albert = classify::albert_filter(ed, din.k_has_real_embedding);
  note("classify", "dim_A = " + std::to_string(r.dim_a) + ", n = " + std::to_string(r.n) +
                       ", building_block = " + bool_word(r.building_block) +
                       ", gl2_type = " + bool_word(r.gl2_type));
  return r;
}

std::string emit_report(const ClassificationReport& r, const std::string& format) {
  if (format == "json") {
    ojson o;
    o["ramified"] = r.ramified_places;
    o["schur_index"] = r.t;
    o["m_cyc"] = r.m_cyc;
    o["class_order"] = r.m;
    o["witness_d"] = r.witness_d;
    o["beta"] = ojson{{"conductor", r.beta_conductor}, {"values", r.beta_values}};
    o["chi_order"] = r.chi_order;
    o["epsilon_order"] = r.epsilon_order;
    o["E_beta"] = ojson{{"conductor", r.e_beta_conductor},
                        {"degree", r.e_beta_degree},
                        {"fixing_subgroup", r.e_beta_fixing}};
    o["E_beta_degree"] = r.e_beta_degree;
    o["splits"] = r.splits_verdict;
    o["descent"] = r.descent_ok;
    o["double_centralizer"] = r.double_centralizer_ok;
    o["f"] = r.f;
    o["dim_B"] = r.dim_b;
    o["dim_A"] = r.dim_a;
    o["n"] = r.n;
    o["field_degree"] = r.field_degree;
    o["building_block"] = r.building_block;
    o["gl2_type"] = r.gl2_type;
    o["albert"] = ojson{{"accepted", r.albert.accepted},
                        {"flagged", r.albert.flagged},
                        {"reason", r.albert.reason}};
    ojson stages = ojson::array();
    for (const auto& s : r.stages) stages.push_back(ojson{{"stage", s.stage}, {"summary", s.summary}});
    o["stages"] = stages;
    return o.dump(2) + "\n";
  }
  if (format == "human") {
    std::ostringstream out;
    out << "ramified places      : ";
    for (size_t i = 0; i < r.ramified_places.size(); ++i)
      out << (i ? ", " : "") << r.ramified_places[i];
    if (r.ramified_places.empty()) out << "(none)";
    out << "\n";
    out << "schur index t        : " << r.t << "\n";
    out << "m_cyc                : " << r.m_cyc << "\n";
    out << "class order m        : " << r.m << "\n";
    out << "E_beta               : degree " << r.e_beta_degree << " at conductor "
        << r.e_beta_conductor << "\n";
    out << "splits / descent / dc: " << bool_word(r.splits_verdict) << " / "
        << bool_word(r.descent_ok) << " / " << bool_word(r.double_centralizer_ok) << "\n";
    out << "dim_A = " << r.dim_a << ", n = " << r.n << ", [E:Q] = " << r.field_degree << "\n";
    out << "building block       : " << bool_word(r.building_block) << "\n";
    out << "GL2-type             : " << bool_word(r.gl2_type) << "\n";
    out << "albert verdict       : " << (r.albert.accepted ? "accept" : "reject")
        << (r.albert.flagged ? " (flagged)" : "") << " - " << r.albert.reason << "\n";
    return out.str();
  }
  throw std::invalid_argument("unknown report format: " + format);
}

}  // namespace blockcalc::pipeline
