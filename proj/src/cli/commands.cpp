#include "dqw/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dqw/bimodule.hpp"
#include "dqw/classify.hpp"
#include "dqw/cli/expression.hpp"
#include "dqw/cli/report.hpp"
#include "dqw/cli/spec_files.hpp"

namespace dqw::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240607;

struct Globals {
  std::string format = "text";
  int order = -1;
  std::uint64_t seed = kDefaultSeed;
  bool timing = false;

  /// DQW_ORDER, else the built-in default. Spec files override it.
  int default_order() const {
    if (const char* env = std::getenv("DQW_ORDER")) {
      try {
        const int n = std::stoi(env);
        if (n >= 0) return n;
      } catch (const std::exception&) {
      }
      throw SchemaError(std::string("DQW_ORDER must be a nonnegative integer, got '") + env + "'");
    }
    return kDefaultOrder;
  }
  int order_or_default() const { return order >= 0 ? order : default_order(); }
};

std::string join(const std::vector<std::string>& args) {
  std::string out = "dqw";
  for (const auto& a : args) out += " " + a;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<Gaussian> parse_vector(const std::string& s) {
  std::vector<Gaussian> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_scalar(part));
  return out;
}

std::vector<Rational> rational_vector(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& g : parse_vector(s)) {
    if (!g.is_real()) throw ParseError("expected rational entries in '" + s + "'", 0);
    out.push_back(g.re());
  }
  return out;
}

CheckReport flag_check(const std::string& name, bool pass, const std::string& note = "") {
  CheckReport c;
  c.name = name;
  c.pass = pass;
  c.note = note;
  return c;
}

// ---- subcommands -----------------------------------------------------------

void cmd_assoc(Report& rep, const Globals& g, const std::string& product) {
  const StarProduct s = load_product_spec(product, g.order, g.default_order());
  rep.set("model", s.model().str());
  rep.set("order", s.order());
  rep.add_check(check_associativity(s));
  rep.add_check(check_unitality(s));
  rep.set("poisson", extract_poisson(s).matrix().str());
}

void cmd_exp(Report& rep, const Globals& g, const std::string& product, const std::string& h_src,
             const std::string& g_src, const std::string& t_src, bool verify) {
  const StarProduct s = load_product_spec(product, g.order, g.default_order());
  const ExpArgument h(parse_series(h_src, s.model(), s.order()));
  const Gaussian t = parse_scalar(t_src);
  if (!t.is_real()) throw ParseError("t must be rational", 0);
  rep.set("H", h.h.str());
  rep.set("Exp(tH)", star_exp(s, h, t.re()).str());
  if (verify) {
    const ExpArgument other(g_src.empty() ? h.h * Gaussian(2) : parse_series(g_src, s.model(), s.order()));
    const ExpReport er = check_exp_identities(s, h, other);
    for (const auto& c : er.checks) rep.add_check(c);
    rep.set("commuting", er.commuting);
  }
}

void cmd_log(Report& rep, const Globals& g, const std::string& product, const std::string& u_src) {
  const StarProduct s = load_product_spec(product, g.order, g.default_order());
  const FormalSeries u = parse_series(u_src, s.model(), s.order());
  rep.set("u", u.str());
  rep.set("Log(u)", star_log(s, u).h.str());
}

void cmd_tau(Report& rep, const Globals& g, const std::string& left, const std::string& right) {
  const StarProduct sl = load_product_spec(left, g.order, g.default_order());
  const StarProduct sr = load_product_spec(right, sl.order());
  const BidiffCochain tau = compute_tau(sl, sr);
  rep.set("tau", tau.str());
  rep.set("tau_is_zero", tau.is_zero());
}

void cmd_delta(Report& rep, const Globals& g, const std::string& product, const std::string& form,
               const std::string& potential, bool verify) {
  const StarProduct s = load_product_spec(product, g.order, g.default_order());
  std::vector<Gaussian> c = parse_vector(form);
  if (c.empty()) c.assign(s.model().dim, Gaussian(0));
  const ClosedOneForm a(s.model(), c, parse_element(potential, s.model()));
  const FormalDerivation d = delta_one_form(s, a);
  rep.set("A", a.str());
  rep.set("delta_A", d.str());
  if (verify) rep.add_check(check_derivation(s, d));
}

void cmd_innerform(Report& rep, const Globals& g, const std::string& product,
                   const std::string& u_src) {
  const StarProduct s = load_product_spec(product, g.order, g.default_order());
  const FormalSeries u = parse_series(u_src, s.model(), s.order());
  const InnerForm f = inner_to_one_form(s, u);
  nlohmann::ordered_json forms = nlohmann::ordered_json::array();
  for (const auto& a : f.forms) forms.push_back(a.str());
  rep.set("u", u.str());
  rep.set("forms", forms);
  rep.set("integral", f.integral);
  rep.set("higher_exact", f.higher_exact);
  rep.add_check(flag_check("exp(delta_A) = Ad(u)", f.verified));
}

void cmd_conn(Report& rep, const std::string& pi_src, const std::string& model_src,
              const std::string& alpha_src, bool curvature_flag, bool class_flag, bool witness_flag) {
  const PoissonStructure pi(parse_matrix(pi_src));
  const Model model = model_src.empty() ? Model::torus(pi.dim()) : parse_model(model_src);
  if (model.dim != pi.dim()) throw SchemaError("Poisson matrix does not match " + model.str());
  const ContravariantConnection d(parse_operator(alpha_src, model));
  rep.set("alpha", d.alpha.str());
  if (!curvature_flag && !class_flag && !witness_flag)
    for (auto& c : check_connection_axioms(d, pi)) rep.add_check(std::move(c));
  if (curvature_flag) {
    const BidiffCochain curv = curvature(d, pi);
    rep.set("curvature", curv.str());
    rep.set("flat", curv.is_zero());
  }
  if (class_flag) {
    const ConnectionClass cc = connection_class(d, pi);
    rep.set("coset", vector_str(cc.coset));
    rep.set("integral", cc.integral);
    if (cc.witness) rep.set("witness", cc.witness->str());
  }
  if (witness_flag) {
    const auto u = integral_witness(d.alpha, pi);
    rep.set("witness", u ? u->str() : std::string("none"));
  }
}

void cmd_bimodule(Report& rep, const Globals& g, const std::string& product,
                  const std::string& spec, const std::string& direction, bool moduli) {
  if (product.empty() == spec.empty())
    throw SchemaError("give exactly one of --product and --spec");
  BimoduleDeformation b;
  ContravariantConnection target(DiffOperator{});
  if (!spec.empty()) {
    b = load_bimodule_spec(spec, g.order, g.default_order());
  } else {
    const StarProduct s = load_product_spec(product, g.order, g.default_order());
    target = ContravariantConnection(parse_operator(direction, s.model()));
    if (moduli) {
      rep.set("moduli", moduli_descriptor(s, target).str());
      return;
    }
    b = deform_in_direction(s, target);
    rep.set("direction", target.alpha.str());
  }
  for (auto& c : check_bimodule_relations(b)) rep.add_check(std::move(c));
  const ContravariantConnection limit = semiclassical_limit(b);
  rep.set("semiclassical_limit", "d + (" + limit.alpha.str() + ")");
  if (spec.empty()) rep.add_check(flag_check("roundtrip S(B) = D", limit.alpha == target.alpha));
  const BidiffCochain curv = curvature(limit, extract_poisson(b.right_product));
  const BidiffCochain tau = compute_tau(b.left_product, b.right_product);
  rep.add_check(flag_check("curv(S(B)) = -tau", curv == -tau));
}

void cmd_classify_image(Report& rep, const std::string& class_path, const std::string& group_path,
                        bool full) {
  const ClassFile c = load_class_spec(class_path);
  const LatticeGroup grp = load_group_spec(group_path);
  rep.set("group_order", grp.elements().size());
  nlohmann::ordered_json image = nlohmann::ordered_json::array();
  for (const auto& l : image_clr(c.series, grp, c.torsion)) image.push_back(l.str());
  rep.set("image_clr", image);
  if (full) {
    const auto cl = image_cl(c.series, grp, c.torsion);
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& e : cl) pairs.push_back(e.str());
    rep.set("image_cl", pairs);
    rep.add_check(flag_check("image_cl closed under the group law", is_group_closed(cl, c.torsion)));
  }
}

void cmd_classify_kernel(Report& rep, const Globals& g, const std::string& model_src,
                         const std::string& pi_src) {
  const Model model = parse_model(model_src);
  const PoissonStructure pi =
      pi_src.empty() ? (model.dim % 2 == 0 ? PoissonStructure::standard(model.dim)
                                           : PoissonStructure(RatMatrix(model.dim, model.dim)))
                     : PoissonStructure(parse_matrix(pi_src));
  if (pi.dim() != model.dim) throw SchemaError("Poisson matrix does not match " + model.str());
  const KernelDescriptor k =
      kernel_descriptor(model.is_torus(), model.dim, pi.is_symplectic(), g.order_or_default());
  rep.set("kernel", k.str());
  rep.set("quotient_rank", k.quotient_rank);
  rep.set("lattice_rank", k.lattice_rank);
  rep.set("higher", k.higher);
  rep.set("injective", k.injective());
}

void cmd_witness(Report& rep, const std::string& v_src, const std::string& symbols,
                 int oracle_bound) {
  const std::vector<Rational> r0 = rational_vector(v_src);
  ExtendedRationalVector v = ExtendedRationalVector::rational(r0);
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  if (!symbols.empty())
    for (const auto& entry : split(symbols, ';')) {
      const auto colon = entry.find(':');
      if (colon == std::string::npos) throw ParseError("symbol entries look like name:q1,q2", 0);
      const std::vector<Rational> part = rational_vector(entry.substr(colon + 1));
      if (part.size() != r0.size()) throw SchemaError("symbol vector of the wrong rank");
      names.push_back(entry.substr(0, colon));
      for (std::size_t j = 0; j < r0.size(); ++j) v.coords[j].push_back(part[j]);
    }
  WitnessCertificate cert = witness_nonsurjective(v);
  if (!names.empty()) rep.set("symbols", names);
  if (oracle_bound > 0) {
    std::vector<Rational> l;
    for (long j = 0; j < cert.l.size(); ++j) l.emplace_back(static_cast<long>(cert.l(j)));
    const bool hit = brute_force_orbit_check(v, l, oracle_bound);
    if (!hit) cert.verified = oracle_bound;
    rep.add_check(flag_check("no A with |a_ij| <= " + std::to_string(oracle_bound) +
                                 " has Av - v = l",
                             !hit));
  }
  rep.set("l", vector_str(cert.l));
  rep.set("certificate", cert.str());
}

void cmd_selftest(Report& rep, const Globals& g) {
  const int n = std::min(g.order_or_default(), 4);
  std::mt19937_64 rng(g.seed);
  const Model torus = Model::torus(2);
  const PoissonStructure pi = PoissonStructure::standard(2);
  const StarProduct s = moyal(torus, pi, n);
  CheckReport assoc = check_associativity(s);
  assoc.name = "Moyal associativity on torus2";
  rep.add_check(assoc);
  CheckReport plane = check_associativity(moyal(Model::plane(2), pi, n));
  plane.name = "Moyal associativity on plane2";
  rep.add_check(plane);

  std::uniform_int_distribution<int> entry(-5, 5);
  RatMatrix m(2, 2);
  const Rational q(make_rational(entry(rng), 1 + (entry(rng) + 5) % 4));
  m(0, 1) = q;
  m(1, 0) = -q;
  rep.add_check(flag_check("bracket extraction for pi12 = " + to_string(q),
                           extract_poisson(moyal(torus, PoissonStructure(m), n)).matrix() == m));

  const ExpArgument h(FormalSeries::monomial(Element::monomial(torus, {entry(rng) % 2, 1}, Gaussian::i()), 1, n));
  for (auto& c : check_exp_identities(s, h, ExpArgument(h.h * Gaussian(3))).checks) rep.add_check(c);

  const ContravariantConnection d(DiffOperator::partial(torus, 1, Gaussian::i()));
  const BimoduleDeformation b = deform_in_direction(s, d);
  rep.add_check(flag_check("deform then semiclassical limit", semiclassical_limit(b).alpha == d.alpha));

  const WitnessCertificate w =
      witness_nonsurjective(ExtendedRationalVector::rational({make_rational(1, 2), make_rational(1, 3)}));
  rep.add_check(flag_check("witness (1/2,1/3) outside the orbit at bound 4",
                           !brute_force_orbit_check({make_rational(1, 2), make_rational(1, 3)},
                                                    {Rational(static_cast<long>(w.l(0))),
                                                     Rational(static_cast<long>(w.l(1)))},
                                                    4)));
  rep.set("seed", g.seed);
  rep.set("order", n);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deformation quantization workbench"};
  app.name("dqw");
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--order", g.order, "Truncation order")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  app.add_flag("--timing", g.timing, "Report elapsed time");

  std::function<void(Report&)> action;

  std::string product, left, right, expr, expr2, t_src = "1", form, potential = "0", pi_src,
      model_src, alpha = "0", spec, direction = "0", class_path, group_path, v_src, symbols;
  bool verify = false, curvature_flag = false, class_flag = false, witness_flag = false,
       moduli = false, full = false;
  int oracle_bound = 0;

  auto* assoc = app.add_subcommand("assoc", "Associativity and unitality of a product");
  assoc->add_option("--product", product, "Product spec file")->required();
  assoc->callback([&] { action = [&](Report& r) { cmd_assoc(r, g, product); }; });

  auto* exp = app.add_subcommand("exp", "Star exponential");
  exp->add_option("--product", product, "Product spec file")->required();
  exp->add_option("--h", expr, "Exponent H with H_0 = 0")->required();
  exp->add_option("--g", expr2, "Second exponent for the identity suite");
  exp->add_option("--t", t_src, "Time parameter");
  exp->add_flag("--verify", verify, "Run the exponential identities");
  exp->callback([&] { action = [&](Report& r) { cmd_exp(r, g, product, expr, expr2, t_src, verify); }; });

  auto* log = app.add_subcommand("log", "Normalized star logarithm");
  log->add_option("--product", product, "Product spec file")->required();
  log->add_option("--u", expr, "Unit u = 1 + O(L)")->required();
  log->callback([&] { action = [&](Report& r) { cmd_log(r, g, product, expr); }; });

  auto* tau = app.add_subcommand("tau", "Second-order invariant of two products");
  tau->add_option("--left", left)->required();
  tau->add_option("--right", right)->required();
  tau->callback([&] { action = [&](Report& r) { cmd_tau(r, g, left, right); }; });

  auto* delta = app.add_subcommand("delta", "Derivation of a closed one-form");
  delta->add_option("--product", product, "Product spec file")->required();
  delta->add_option("--form", form, "Constant part c1,..,cm");
  delta->add_option("--potential", potential, "Exact part g");
  delta->add_flag("--verify", verify, "Check the derivation property");
  delta->callback([&] { action = [&](Report& r) { cmd_delta(r, g, product, form, potential, verify); }; });

  auto* inner = app.add_subcommand("innerform", "One-form of an inner automorphism");
  inner->add_option("--product", product, "Product spec file")->required();
  inner->add_option("--u", expr, "Unit")->required();
  inner->callback([&] { action = [&](Report& r) { cmd_innerform(r, g, product, expr); }; });

  auto* conn = app.add_subcommand("conn", "Contravariant connections d + alpha");
  conn->add_option("--pi", pi_src, "Poisson matrix")->required();
  conn->add_option("--model", model_src, "torusN or planeN");
  conn->add_option("--alpha", alpha, "Vector field");
  conn->add_flag("--curvature", curvature_flag);
  conn->add_flag("--class", class_flag);
  conn->add_flag("--witness", witness_flag);
  conn->callback([&] {
    action = [&](Report& r) {
      cmd_conn(r, pi_src, model_src, alpha, curvature_flag, class_flag, witness_flag);
    };
  });

  auto* bim = app.add_subcommand("bimodule", "Bimodule deformations");
  bim->add_option("--product", product, "Product spec file");
  bim->add_option("--spec", spec, "Bimodule spec file");
  bim->add_option("--direction", direction, "Connection field alpha");
  bim->add_flag("--verify", verify);
  bim->add_flag("--moduli", moduli);
  bim->callback([&] { action = [&](Report& r) { cmd_bimodule(r, g, product, spec, direction, moduli); }; });

  auto* classify = app.add_subcommand("classify", "Picard image and kernel descriptors");
  classify->require_subcommand(1);
  auto* image = classify->add_subcommand("image", "Image of the classical limit");
  image->add_option("--class", class_path)->required();
  image->add_option("--group", group_path)->required();
  image->add_flag("--full", full);
  image->callback([&] { action = [&](Report& r) { cmd_classify_image(r, class_path, group_path, full); }; });
  auto* kernel = classify->add_subcommand("kernel", "Kernel of the classical limit");
  kernel->add_option("--model", model_src)->required();
  kernel->add_option("--pi", pi_src);
  kernel->callback([&] { action = [&](Report& r) { cmd_classify_kernel(r, g, model_src, pi_src); }; });

  auto* witness = app.add_subcommand("witness", "Non-surjectivity witness");
  witness->add_option("--v", v_src, "Rational part, comma separated")->required();
  witness->add_option("--symbols", symbols, "name:q1,..;name:..");
  witness->add_option("--oracle-bound", oracle_bound, "Brute-force confirmation bound")
      ->check(CLI::Range(0, 8));
  witness->callback([&] { action = [&](Report& r) { cmd_witness(r, v_src, symbols, oracle_bound); }; });

  auto* selftest = app.add_subcommand("selftest", "Quick property suite");
  selftest->callback([&] { action = [&](Report& r) { cmd_selftest(r, g); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Report rep;
  rep.command = join(args);
  int code = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    action(rep);
    code = rep.exit_code();
  } catch (const ParseError& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    rep.status = Status::Fail;
    rep.set("error", e.kind() + ": " + e.what());
    code = 1;
  }
  if (g.timing)
    rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (g.format == "json")
    out << rep.json().dump(2) << "\n";
  else
    out << rep.text();
  return code;
}

}  // namespace dqw::cli
