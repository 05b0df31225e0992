#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "wcl/generator.hpp"
#include "wcl/json_io.hpp"
#include "wcl/montecarlo.hpp"
#include "wcl/parser.hpp"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitPrecondition = 4;

struct Output {
  std::string path;       // empty = stdout
  std::string format = "json";

  void emit(const wcl::Json& j) const {
    std::string body;
    if (format == "table") {
      if (j.contains("identity")) {
        body = j["identity"].get<std::string>() + ": lhs=" + j.value("lhs", std::string("-")) +
               " rhs=" + j.value("rhs", std::string("-")) +
               " pass=" + (j.value("pass", false) ? "yes" : "no") + "\n";
      } else {
        body = j.dump(2) + "\n";
      }
    } else {
      body = j.dump(2) + "\n";
    }
    if (path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + path);
      out << body;
    }
  }
};

wcl::PredictableField load_field(const std::string& z_file, const std::string& z_inline) {
  wcl::Json j;
  if (!z_inline.empty()) {
    j = wcl::Json::parse(z_inline);
  } else if (!z_file.empty()) {
    std::ifstream in(z_file);
    if (!in) throw std::runtime_error("cannot open field file: " + z_file);
    j = wcl::Json::parse(in);
  } else {
    throw CLI::ValidationError("--z-file or --z is required");
  }
  return wcl::field_from_json(j);
}

int emit_report(const wcl::VerificationReport& rep, const Output& out) {
  out.emit(rep.to_json());
  return rep.pass ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo verification of Cameron-Martin / "
               "Maruyama-Girsanov identities on polynomial Wiener functionals"};
  app.require_subcommand(1);

  Output out;
  app.add_option("--out", out.path, "Write the report JSON to this file (default stdout)");
  app.add_option("--format", out.format, "Report format: json|table")
      ->check(CLI::IsMember({"json", "table"}));

  std::string f_expr, g_expr, theta_expr, z_file, z_inline;
  int n_arg = 1;
  bool allow_anticipating = false;
  std::uint64_t seed = 0;
  long long count = 100000;
  int level = 1, degree = 3, coords = 3, coeff_bound = 9, dim = 0;
  std::string kind;
  bool anticipating = false;

  auto* verify = app.add_subcommand("verify", "Exact rational identity checks");
  verify->require_subcommand(1);
  auto add_f = [&](CLI::App* c) { c->add_option("--f", f_expr, "Functional F")->required(); };
  auto add_z = [&](CLI::App* c) {
    c->add_option("--z-file", z_file, "Predictable field JSON file");
    c->add_option("--z", z_inline, "Predictable field JSON inline");
  };

  auto* v_cm = verify->add_subcommand("cm", "Cameron-Martin formula");
  add_f(v_cm);
  v_cm->add_option("--theta", theta_expr, "Direction, e.g. \"1*e1 + 1/2*e2\"")->required();

  auto* v_adj = verify->add_subcommand("adjoint", "Adjointness of D and D*");
  add_f(v_adj);
  v_adj->add_option("--g", g_expr, "Functional G")->required();
  v_adj->add_option("--theta", theta_expr, "Direction")->required();

  auto* v_mg = verify->add_subcommand("mg", "Maruyama-Girsanov formula");
  add_f(v_mg);
  add_z(v_mg);

  auto* v_ln = verify->add_subcommand("ln", "L_n expectation duality");
  add_f(v_ln);
  add_z(v_ln);
  v_ln->add_option("--n", n_arg, "Operator order n")->required();
  v_ln->add_flag("--allow-anticipating", allow_anticipating,
                 "Run anticipating probes (always reported as failures)");

  auto* v_den = verify->add_subcommand("density", "Density expansion in expectation");
  add_f(v_den);
  add_z(v_den);

  auto* check = app.add_subcommand("check", "Structural checks");
  auto* c_nil = check->add_subcommand("nilpotent", "Jacobian nilpotency");
  add_z(c_nil);
  c_nil->add_option("--dim", dim, "Matrix dimension (default: frame dimension)");

  auto* mc = app.add_subcommand("mc", "Monte Carlo cross-checks");
  mc->require_subcommand(1);
  auto add_mc_opts = [&](CLI::App* c) {
    c->add_option("--seed", seed, "RNG seed");
    c->add_option("--count", count, "Sample count");
    c->add_option("--level", level, "Dyadic level of the sample batch");
  };
  auto* mc_cm = mc->add_subcommand("cm", "Statistical Cameron-Martin check");
  add_f(mc_cm);
  mc_cm->add_option("--theta", theta_expr, "Direction")->required();
  add_mc_opts(mc_cm);
  auto* mc_mg = mc->add_subcommand("mg", "Statistical Maruyama-Girsanov check");
  add_f(mc_mg);
  add_z(mc_mg);
  add_mc_opts(mc_mg);

  auto* gen = app.add_subcommand("gen", "Generate a verification instance");
  gen->add_option("--kind", kind, "cm|adjoint|mg|ln|nilpotency|density")->required();
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--level", level, "Haar level");
  gen->add_option("--degree", degree, "Max total degree of F");
  gen->add_option("--coords", coords, "Max coordinate");
  gen->add_option("--coeff-bound", coeff_bound, "Coefficient magnitude bound");
  gen->add_flag("--anticipating", anticipating, "Emit a deliberately anticipating probe");

  auto* parse = app.add_subcommand("parse", "Parse an expression to canonical JSON");
  parse->add_option("--expr", f_expr, "Expression text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (v_cm->parsed())
      return emit_report(wcl::verify_cm(wcl::parse_expression(f_expr),
                                        wcl::parse_direction(theta_expr)),
                         out);
    if (v_adj->parsed())
      return emit_report(wcl::verify_adjoint(wcl::parse_expression(f_expr),
                                             wcl::parse_expression(g_expr),
                                             wcl::parse_direction(theta_expr)),
                         out);
    if (v_mg->parsed())
      return emit_report(
          wcl::verify_mg(wcl::parse_expression(f_expr), load_field(z_file, z_inline)), out);
    if (v_ln->parsed())
      return emit_report(wcl::verify_ln_duality(wcl::parse_expression(f_expr),
                                                load_field(z_file, z_inline), n_arg,
                                                allow_anticipating),
                         out);
    if (v_den->parsed())
      return emit_report(wcl::verify_density_expansion(wcl::parse_expression(f_expr),
                                                       load_field(z_file, z_inline)),
                         out);
    if (c_nil->parsed()) {
      wcl::PredictableField z = load_field(z_file, z_inline);
      int d = dim > 0 ? dim : z.frame.dimension();
      for (auto& [k, zk] : z.components)
        d = std::max({d, k, zk.max_coord()});
      auto rep = wcl::nilpotency_check(z.as_field(), d);
      wcl::Json j = wcl::nilpotency_to_json(rep);
      j["dim"] = d;
      out.emit(j);
      return rep.nilpotent ? 0 : kExitVerifyFail;
    }
    if (mc_cm->parsed()) {
      auto batch = wcl::sample_batch(level, count, seed);
      return emit_report(wcl::mc_verify_cm(wcl::parse_expression(f_expr),
                                           wcl::parse_direction(theta_expr), batch),
                         out);
    }
    if (mc_mg->parsed()) {
      auto batch = wcl::sample_batch(level, count, seed);
      return emit_report(
          wcl::mc_verify_mg(wcl::parse_expression(f_expr), load_field(z_file, z_inline), batch),
          out);
    }
    if (gen->parsed()) {
      wcl::InstanceSpec spec;
      spec.kind = kind;
      spec.seed = seed;
      spec.level = level;
      spec.degree = degree;
      spec.coords = coords;
      spec.coeff_bound = coeff_bound;
      spec.anticipating = anticipating;
      out.emit(wcl::gen_instance(spec));
      return 0;
    }
    if (parse->parsed()) {
      out.emit(wcl::chaos_to_json(wcl::parse_expression(f_expr)));
      return 0;
    }
  } catch (const wcl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const wcl::AnticipatingFieldError& e) {
    std::cerr << "precondition violation: field is anticipating;";
    for (auto& v : e.violations) std::cerr << " (k=" << v.k << ", j=" << v.j << ")";
    std::cerr << "\n";
    return kExitPrecondition;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
