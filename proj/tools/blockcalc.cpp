#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "blockcalc/errors.hpp"
#include "blockcalc/pipeline.hpp"
#include "json.hpp"

using namespace blockcalc;
using ojson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw SchemaError(path + ": cannot open for writing");
  out << text;
}

long modulus_cap(long dflt) {
  if (const char* e = std::getenv("BLOCKCALC_MODULUS_CAP")) return std::max(1L, std::atol(e));
  return dflt;
}

csa::PlaceQ read_place(const std::string& s) {
  if (s == "inf") return csa::PlaceQ::real();
  Int p(s);
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("not a prime place: " + s);
  return csa::PlaceQ::at(p);
}

ojson beta_json(const cohom::SplittingMap& beta) {
  ojson values = ojson::array();
  for (const auto& v : beta.values) values.push_back(cyclo::coeff_strings(v));
  return ojson{{"conductor", beta.conductor}, {"values", values}};
}

// Default representation conductor for split: the torsion part joined with
// the conductors of the square roots of the class-order witness.
long default_split_conductor(const cohom::Cocycle2& c, const cohom::ClassOrder& cls) {
  long w = c.basis.torsion_conductor;
  if (cls.m == 2)
    for (const auto& d : cls.witness)
      w = cyclo::lcm_long(w, cyclo::sqrt_as_cyclotomic(cohom::mv_to_rational(c.basis, d)).first);
  return w;
}

cohom::SplittingMap split_with_growth(const cohom::Cocycle2& c, long w0) {
  for (long mult : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 24L}) {
    try {
      return cohom::split_cocycle(c, w0 * mult);
    } catch (const InsufficientCoefficients&) {
    }
  }
  throw InsufficientCoefficients("no splitting map within conductor " + std::to_string(24 * w0));
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact splitting-map and quaternion-algebra calculator"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  bool human = false;
  auto* sc_pipe = app.add_subcommand("pipeline", "run the full classification pipeline");
  sc_pipe->add_option("--in", in_path, "input datum (JSON)")->required();
  sc_pipe->add_option("--out", out_path, "output report path (default stdout)");
  sc_pipe->add_flag("--human", human, "aligned-text rendering instead of JSON");

  std::string co_in;
  auto* sc_order = app.add_subcommand("cocycle-order", "order of the cocycle class");
  sc_order->add_option("--in", co_in, "input datum (JSON)")->required();

  std::string sp_in;
  long sp_w = 0;
  auto* sc_split = app.add_subcommand("split", "exact splitting map");
  sc_split->add_option("--in", sp_in, "input datum (JSON)")->required();
  sc_split->add_option("--w", sp_w, "coefficient conductor W (default: derived)");

  std::string ad_in;
  long ad_n = 1;
  auto* sc_adjust = app.add_subcommand("adjust", "splitting map with zeta_n forced into E_beta");
  sc_adjust->add_option("--in", ad_in, "input datum (JSON)")->required();
  sc_adjust->add_option("--n", ad_n, "root of unity to adjoin")->required();

  std::string ha, hb, hv;
  auto* sc_hil = app.add_subcommand("hilbert", "hilbert symbol (a,b)_v");
  sc_hil->add_option("a", ha)->required();
  sc_hil->add_option("b", hb)->required();
  sc_hil->add_option("v", hv, "a prime or inf")->required();

  std::string ra, rb;
  auto* sc_ram = app.add_subcommand("ramify", "ramified places and Schur index");
  sc_ram->add_option("a", ra)->required();
  sc_ram->add_option("b", rb)->required();

  std::string fa, fb;
  auto* sc_sf = app.add_subcommand("split-field", "least cyclotomic splitting conductor");
  sc_sf->add_option("a", fa)->required();
  sc_sf->add_option("b", fb)->required();

  long gw_deg = 1;
  std::vector<std::string> gw_at;
  auto* sc_gw = app.add_subcommand("gw", "cyclic field with prescribed local degrees");
  sc_gw->add_option("--deg", gw_deg, "degree of the extension")->required();
  sc_gw->add_option("--at", gw_at, "constraint place:divisor, e.g. 2:2 or inf:2");

  long cf = 1, ct = 1, cdimb = 1;
  std::string ctype = "I";
  bool creal = false;
  auto* sc_cl = app.add_subcommand("classify", "building-block and Albert verdicts");
  sc_cl->add_option("--f", cf, "[F:Q]")->required();
  sc_cl->add_option("--t", ct, "Schur index")->required();
  sc_cl->add_option("--type", ctype, "Albert type I|II|III|IV")->required();
  sc_cl->add_option("--dimB", cdimb, "dim B")->required();
  sc_cl->add_flag("--real-embedding", creal, "k has a real embedding");

  CLI11_PARSE(app, argc, argv);

  if (sc_pipe->parsed()) {
    auto report = pipeline::run_pipeline(pipeline::parse_datum(slurp(in_path)));
    spit(out_path, pipeline::emit_report(report, human ? "human" : "json"));
    return 0;
  }
  if (sc_order->parsed()) {
    auto d = pipeline::parse_datum(slurp(co_in));
    auto cls = cohom::class_order(d.cocycle);
    ojson w = ojson::array();
    for (const auto& x : cls.witness)
      w.push_back(format_rat(cohom::mv_to_rational(d.cocycle.basis, x)));
    std::cout << ojson{{"m", cls.m}, {"witness_d", w}}.dump(2) << "\n";
    return 0;
  }
  if (sc_split->parsed()) {
    auto d = pipeline::parse_datum(slurp(sp_in));
    auto cls = cohom::class_order(d.cocycle);
    if (cls.m > 2) throw UnsupportedClassOrder(static_cast<int>(cls.m));
    cohom::SplittingMap beta = sp_w > 0
                                   ? cohom::split_cocycle(d.cocycle, sp_w)
                                   : split_with_growth(d.cocycle, default_split_conductor(d.cocycle, cls));
    std::cout << beta_json(beta).dump(2) << "\n";
    return 0;
  }
  if (sc_adjust->parsed()) {
    auto d = pipeline::parse_datum(slurp(ad_in));
    auto cls = cohom::class_order(d.cocycle);
    if (cls.m > 2) throw UnsupportedClassOrder(static_cast<int>(cls.m));
    auto beta = split_with_growth(d.cocycle, default_split_conductor(d.cocycle, cls));
    auto adj = cohom::adjust_splitting_map(beta, d.cocycle, ad_n, cls.m, cls.witness);
    auto info = cohom::splitting_field_of(adj.beta);
    ojson o{{"beta", beta_json(adj.beta)},
            {"chi_order", adj.chi_order},
            {"epsilon_order", adj.epsilon.order()},
            {"E_beta_degree", info.degree},
            {"E_beta_conductor", info.conductor}};
    std::cout << o.dump(2) << "\n";
    return 0;
  }
  if (sc_hil->parsed()) {
    std::cout << csa::hilbert_symbol(parse_rat(ha), parse_rat(hb), read_place(hv)) << "\n";
    return 0;
  }
  if (sc_ram->parsed()) {
    auto ram = csa::ramification_data(csa::QuaternionAlgebraQ(parse_rat(ra), parse_rat(rb)));
    ojson places = ojson::array();
    for (const auto& v : ram.ramified) places.push_back(csa::place_name(v));
    std::cout << ojson{{"ramified", places}, {"schur_index", ram.schur_index}}.dump(2) << "\n";
    return 0;
  }
  if (sc_sf->parsed()) {
    auto alg = csa::QuaternionAlgebraQ(parse_rat(fa), parse_rat(fb));
    std::cout << csa::min_cyclotomic_splitting(alg, modulus_cap(10000)) << "\n";
    return 0;
  }
  if (sc_gw->parsed()) {
    std::vector<csa::LocalDegreeConstraint> cs;
    for (const auto& s : gw_at) {
      auto colon = s.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("constraint must look like place:divisor: " + s);
      cs.push_back({read_place(s.substr(0, colon)), std::stol(s.substr(colon + 1))});
    }
    auto k = csa::grunwald_wang_search(cs, gw_deg, modulus_cap(5000));
    std::cout << ojson{{"modulus", k.modulus}, {"subgroup", k.subgroup}, {"degree", k.degree()}}
                     .dump(2)
              << "\n";
    return 0;
  }
  if (sc_cl->parsed()) {
    classify::EndomorphismDatum d{cf, ct, classify::albert_from_string(ctype),
                                  ctype != "IV", cdimb};
    classify::validate(d);
    bool bb = classify::building_block_check(d);
    auto verdict = classify::albert_filter(d, creal);
    std::cout << ojson{{"building_block", bb},
                       {"albert", ojson{{"accepted", verdict.accepted},
                                        {"flagged", verdict.flagged},
                                        {"reason", verdict.reason}}}}
                     .dump(2)
              << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UnsupportedClassOrder& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SearchBoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CocycleInvalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
