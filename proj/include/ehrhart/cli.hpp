#pragma once

// The `ehrhart` command line. run() is separate from main() so the test
// suite can drive it with argument vectors and capture the output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ehrhart/ehrhart.hpp"
#include "ehrhart/gallery.hpp"
#include "ehrhart/io.hpp"
#include "ehrhart/theory.hpp"
#include "ehrhart/verify.hpp"

namespace ehrhart::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kConsistency = 2 };

// "a,b,c" or "a..b", positive integers.
inline std::vector<unsigned> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> raw;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = detail::parse_int_list(text.substr(0, dots));
    const auto hi = detail::parse_int_list(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw Error("bad range '" + text + "'");
    for (std::int64_t n = lo[0]; n <= hi[0]; ++n) raw.push_back(n);
  } else {
    raw = detail::parse_int_list(text);
  }
  std::vector<unsigned> out;
  for (auto n : raw) {
    if (n < 1 || n > 100000) throw Error("n must be between 1 and 100000, got " + std::to_string(n));
    out.push_back(static_cast<unsigned>(n));
  }
  return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational x = parse_rational(item);
    if (x <= 0) throw Error("evaluation points must be positive, got " + item);
    out.push_back(x);
  }
  if (out.empty()) throw Error("empty list of evaluation points");
  return out;
}

// Interval precision in bits, from EHRHART_PRECISION when set.
inline unsigned precision_bits() {
  const char* env = std::getenv("EHRHART_PRECISION");
  if (env == nullptr || *env == '\0') return 64;
  const auto v = detail::parse_int_list(env);
  if (v.size() != 1 || v[0] < 16 || v[0] > 4096) throw Error("EHRHART_PRECISION must be an integer in [16, 4096]");
  return static_cast<unsigned>(v[0]);
}

inline Json polynomial_json(const FracPoly& f) {
  Json j = to_json(f);
  j["text"] = f.to_string();
  return j;
}

inline Json polynomial_json(const IntPoly& f) {
  Json j = to_json(f);
  j["text"] = f.to_string();
  return j;
}

inline Json evaluation_json(const Evaluation& e) {
  return Json{{"lower", e.lower.str()}, {"upper", e.upper.str()}, {"approx", e.to_double()}};
}

inline Json hstar_command(const std::string& spec) {
  const auto p = load_polytope(spec);
  return Json{{"polytope", spec}, {"hstar", polynomial_json(hstar(p))}};
}

inline Json weighted_command(const std::string& spec) {
  const auto p = load_polytope(spec);
  return Json{{"polytope", spec},
              {"r_P", gorenstein_denominator(p)},
              {"weighted_hstar", polynomial_json(weighted_hstar(p))}};
}

inline Json freesum_command(const std::string& a, const std::string& b, bool check) {
  const auto p = load_polytope(a);
  const auto q = load_polytope(b);
  const FracPoly product = freesum_weighted_hstar(p, q);
  const IntPoly rounded = psi(product);
  const BjmVerdict v = bjm_equality(p, q);
  if (v.predicted != v.actual) throw ConsistencyError("h* product criterion disagrees with the denominators");
  Json out{{"polytopes", {a, b}},
           {"weighted_hstar", polynomial_json(product)},
           {"hstar", polynomial_json(rounded)},
           {"bjm", {{"predicted", v.predicted}, {"actual", v.actual}}}};
  if (check) {
    const auto pq = free_sum(p, q);
    const FracPoly counted = weighted_hstar(pq);
    const IntPoly counted_h = hstar(pq);
    if (counted != product || counted_h != rounded)
      throw ConsistencyError("free-sum product formula disagrees with lattice-point counting");
    out["check_by_counting"] = {{"agrees", true}};
  }
  return out;
}

inline Json payne_command(const std::string& list) {
  const PayneWeights w(detail::parse_int_list(list));
  const FracPoly f = payne_formula(w);
  Json weights = Json::array();
  for (auto a : w.values()) weights.push_back(a);
  return Json{{"weights", weights},
              {"polytope", to_json(payne_simplex(w))},
              {"weighted_hstar", polynomial_json(f)},
              {"hstar", polynomial_json(psi(f))}};
}

inline Json cyclotomic_command(std::int64_t n) {
  const auto c = cyclotomic_polytope(n);
  const IntPoly h = hstar(c);
  const std::int64_t sq = squarefree_part(n);
  const IntPoly via = psi(weighted_hstar(cyclotomic_polytope(sq)).pow(static_cast<unsigned>(n / sq)));
  if (via != h) throw ConsistencyError("h* of C_n disagrees with the free-sum power of C_sqf(n)");
  return Json{{"n", n},
              {"polytope", to_json(c)},
              {"hstar", polynomial_json(h)},
              {"weighted_hstar", polynomial_json(weighted_hstar(c))},
              {"reflexive", c.origin_position() == OriginPosition::interior && gorenstein_denominator(c) == 1},
              {"lattice_points", count_points(c, 1).str()}};
}

inline Json verify_command(const std::string& suite, std::uint64_t seed, bool& passed) {
  const PropertyLog log = run_suite(suite, seed);
  Json props = Json::array();
  for (const auto& r : log.results()) {
    Json j{{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"cases", r.cases}};
    if (!r.passed) j["counterexample"] = r.detail;
    props.push_back(std::move(j));
  }
  passed = log.all_passed();
  return Json{{"suite", suite}, {"seed", seed}, {"passed", passed}, {"properties", std::move(props)}};
}

inline Json asymptotics_command(const std::string& spec, const std::vector<unsigned>& ns,
                                const std::vector<Rational>& xs, unsigned bits) {
  const auto p = load_polytope(spec);
  Json chains = Json::array();
  Json subsequences = Json::array();
  for (const auto& x : xs) {
    for (unsigned n : ns) {
      const HarrisChain c = asymptotic_check(p, n, x, bits);
      if (!c.holds) throw ConsistencyError("asymptotic bound chain fails at n=" + std::to_string(n) + ", x=" + x.str());
      chains.push_back(Json{{"n", n},
                            {"x", x.str()},
                            {"regime", c.x_at_least_one ? "x>=1" : "x<=1"},
                            {"holds", c.holds},
                            {"decided", c.decided},
                            {"precision_bits", c.precision_bits},
                            {"lhs", evaluation_json(c.lhs)},
                            {"mid", evaluation_json(c.mid)},
                            {"rhs", evaluation_json(c.rhs)}});
    }
    const SubsequenceRecord rec = reconstruct_from_subsequence(p, ns, x);
    Json pts = Json::array();
    for (const auto& pt : rec.points) pts.push_back(Json{{"n", pt.n}, {"root", pt.root}, {"gap", pt.gap}});
    subsequences.push_back(
        Json{{"x", x.str()}, {"target", rec.target}, {"points", std::move(pts)}, {"shrinking", rec.shrinking}});
  }
  return Json{{"polytope", spec},
              {"r_P", gorenstein_denominator(p)},
              {"chains", std::move(chains)},
              {"subsequences", std::move(subsequences)}};
}

inline void emit(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ehrhart, h* and weighted h* polynomials of lattice polytopes containing the origin", "ehrhart"};
  app.require_subcommand(1);

  std::string p_spec, q_spec, alpha, suite = "all", n_text, x_text, out_path;
  std::int64_t cyc_n = 0;
  std::uint64_t seed = 0;
  bool check = false;

  auto* c_hstar = app.add_subcommand("hstar", "h*-polynomial of a polytope");
  c_hstar->add_option("polytope", p_spec, "JSON file or gallery name")->required();
  auto* c_weighted = app.add_subcommand("weighted", "weighted h*-polynomial of a polytope");
  c_weighted->add_option("polytope", p_spec, "JSON file or gallery name")->required();
  auto* c_freesum = app.add_subcommand("freesum", "weighted h* and h* of a free sum from its summands");
  c_freesum->add_option("P", p_spec)->required();
  c_freesum->add_option("Q", q_spec)->required();
  c_freesum->add_flag("--check-by-counting", check, "also count lattice points in the free sum");
  auto* c_payne = app.add_subcommand("payne", "closed-form weighted h* of a Payne simplex");
  c_payne->add_option("alpha", alpha, "comma-separated weights")->required();
  auto* c_cyc = app.add_subcommand("cyclotomic", "cyclotomic polytope C_n");
  c_cyc->add_option("n", cyc_n)->required();
  auto* c_verify = app.add_subcommand("verify", "run the property suites on seeded random instances");
  c_verify->add_option("--suite", suite)->check(CLI::IsMember({"core", "freesum", "gallery", "asymptotics", "all"}));
  c_verify->add_option("--seed", seed)->required();
  auto* c_clt = app.add_subcommand("clt", "distance to the normal limit of h* coefficients of iterated free sums");
  c_clt->add_option("polytope", p_spec)->required();
  c_clt->add_option("--n", n_text, "list like 25,100,400 or a range 1..20")->required();
  c_clt->add_option("--out", out_path, "write the report here instead of standard output");
  auto* c_asym = app.add_subcommand("asymptotics", "bound chains for h* of iterated free sums");
  c_asym->add_option("polytope", p_spec)->required();
  c_asym->add_option("--n", n_text, "list like 1,2,3 or a range 1..20")->required();
  c_asym->add_option("--x", x_text, "comma-separated positive rationals")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit(Json{{"error", e.what()}}, out);
    return kValidation;
  }

  try {
    if (c_hstar->parsed()) emit(hstar_command(p_spec), out);
    else if (c_weighted->parsed()) emit(weighted_command(p_spec), out);
    else if (c_freesum->parsed()) emit(freesum_command(p_spec, q_spec, check), out);
    else if (c_payne->parsed()) emit(payne_command(alpha), out);
    else if (c_cyc->parsed()) emit(cyclotomic_command(cyc_n), out);
    else if (c_verify->parsed()) {
      bool passed = false;
      emit(verify_command(suite, seed, passed), out);
      return passed ? kOk : kConsistency;
    } else if (c_clt->parsed()) {
      const auto p = load_polytope(p_spec);
      const Json report = to_json(clt_report(p, parse_n_list(n_text)), p_spec);
      if (out_path.empty()) {
        emit(report, out);
      } else {
        std::ofstream file(out_path);
        if (!file) throw Error("cannot write " + out_path);
        emit(report, file);
        emit(Json{{"written", out_path}}, out);
      }
    } else if (c_asym->parsed()) {
      emit(asymptotics_command(p_spec, parse_n_list(n_text), parse_rational_list(x_text), precision_bits()), out);
    }
  } catch (const ConsistencyError& e) {
    emit(Json{{"error", e.what()}, {"kind", "consistency"}}, out);
    err << "internal consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const Error& e) {
    emit(Json{{"error", e.what()}}, out);
    return kValidation;
  }
  return kOk;
}

}  // namespace ehrhart::cli
