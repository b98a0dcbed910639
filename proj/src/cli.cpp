#include "wpa/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpa/groups.hpp"
#include "wpa/morita.hpp"
#include "wpa/pbw.hpp"
#include "wpa/quiver.hpp"
#include "wpa/sra.hpp"
#include "wpa/wreath.hpp"

namespace wpa {

namespace {

using nlohmann::ordered_json;

std::vector<Scalar> parse_csv(const std::string& text) {
  std::vector<Scalar> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Scalar::parse(item));
  return out;
}

ordered_json scalars(const std::vector<Scalar>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& s : v) a.push_back(s.str());
  return a;
}

// A file path, or an inline shorthand such as affineA:2.
Quiver load_quiver(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream buf;
    buf << in.rdbuf();
    return Quiver::from_json(buf.str());
  }
  return parse_quiver_spec(spec);
}

FiniteGroup load_group(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::string line;
    std::getline(in, line);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    return parse_group_spec(line);
  }
  return parse_group_spec(spec);
}

ordered_json quiver_json(const Quiver& q) {
  ordered_json j;
  j["vertices"] = q.num_vertices();
  j["edges"] = ordered_json::array();
  for (const auto& e : q.edges()) j["edges"].push_back({e.tail, e.head});
  return j;
}

struct SraOptions {
  std::string group = "cyclic:2";
  int n = 2;
  std::string t = "1", k = "0", cprime;
};

void add_sra_options(CLI::App* sub, SraOptions& o) {
  sub->add_option("--group", o.group, "cyclic:<l> or bindihedral:<l>")->required();
  sub->add_option("--n", o.n, "rank n")->required();
  sub->add_option("--t", o.t, "rational t");
  sub->add_option("--k", o.k, "rational k");
  sub->add_option("--cprime", o.cprime, "c' on the non-identity elements, comma separated (default 0)");
}

SraParams params_from(const FiniteGroup& G, const SraOptions& o) {
  std::vector<Scalar> c = parse_csv(o.cprime);
  if (c.empty()) c.assign(G.order() - 1, Scalar(0));
  return make_params(G, Scalar::parse(o.t), Scalar::parse(o.k), c);
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with wreath-product deformations and symplectic reflection algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

  int code = 0;
  ordered_json report;
  std::string text_report;

  // quiver show
  auto* quiver_cmd = app.add_subcommand("quiver", "quiver utilities");
  quiver_cmd->require_subcommand(1);
  std::string quiver_spec;
  auto* show = quiver_cmd->add_subcommand("show", "vertex and edge tables");
  show->add_option("--quiver", quiver_spec, "quiver file or shorthand")->required();
  show->callback([&] {
    const DoubledQuiver dq(load_quiver(quiver_spec));
    report = quiver_json(dq.base());
    ordered_json doubled = ordered_json::array();
    for (int e = 0; e < dq.num_edges(); ++e) {
      doubled.push_back({{"id", e}, {"name", dq.edge_name(e)}, {"tail", dq.tail(e)}, {"head", dq.head(e)}});
    }
    report["doubled_edges"] = doubled;
    report["has_loop"] = dq.base().has_loop();
    std::ostringstream t;
    t << "vertices: " << dq.num_vertices() << "\n";
    t << "edge  name  tail  head\n";
    for (int e = 0; e < dq.num_edges(); ++e) {
      t << e << "  " << dq.edge_name(e) << "  " << dq.tail(e) << "  " << dq.head(e) << "\n";
    }
    text_report = t.str();
  });

  // dims
  int n = 2, degree = 2;
  std::string relations = "pi0";
  auto* dims = app.add_subcommand("dims", "graded dimensions of the wreath algebra");
  dims->add_option("--quiver", quiver_spec, "quiver file or shorthand")->required();
  dims->add_option("--n", n, "rank n")->required();
  dims->add_option("--degree", degree, "degree cap")->required();
  dims->add_option("--relations", relations, "pi0 or free")->check(CLI::IsMember({"pi0", "free"}));
  dims->callback([&] {
    const Quiver q = load_quiver(quiver_spec);
    const WreathAlgebra A(DoubledQuiver(q), n);
    RelationSet rels;
    if (relations == "pi0") rels = A.relations(std::vector<Scalar>(static_cast<std::size_t>(q.num_vertices())), Scalar(0));
    const auto d = A.graded_dimension(rels, degree);
    report["quiver"] = quiver_json(q);
    report["n"] = n;
    report["relations"] = relations;
    report["dims"] = d;
    std::ostringstream t;
    for (std::size_t i = 0; i < d.size(); ++i) t << i << "  " << d[i] << "\n";
    text_report = t.str();
  });

  // pbw solve / check
  auto* pbw = app.add_subcommand("pbw", "PBW deformations");
  pbw->require_subcommand(1);
  auto* solve_cmd = pbw->add_subcommand("solve", "all admissible deformation parameters");
  solve_cmd->add_option("--quiver", quiver_spec, "quiver file or shorthand")->required();
  solve_cmd->add_option("--n", n, "rank n >= 2")->required();
  solve_cmd->callback([&] {
    if (n < 2) throw std::invalid_argument("pbw solve requires n >= 2");
    const PbwSystem sys(load_quiver(quiver_spec), n);
    const auto sol = sys.solve();
    report = ordered_json::parse(to_json(sys, sol));
    code = sol.certified ? 0 : 1;
  });
  std::string lambda_csv, nu_text = "0";
  auto* check_cmd = pbw->add_subcommand("check", "residual of the parameters (lambda, nu)");
  check_cmd->add_option("--quiver", quiver_spec, "quiver file or shorthand")->required();
  check_cmd->add_option("--n", n, "rank n >= 2")->required();
  check_cmd->add_option("--lambda", lambda_csv, "lambda per vertex, comma separated")->required();
  check_cmd->add_option("--nu", nu_text, "rational nu");
  check_cmd->callback([&] {
    if (n < 2) throw std::invalid_argument("pbw check requires n >= 2");
    const Quiver q = load_quiver(quiver_spec);
    const auto lambda = parse_csv(lambda_csv);
    if (lambda.size() != static_cast<std::size_t>(q.num_vertices())) {
      throw std::invalid_argument("--lambda needs one value per vertex");
    }
    const PbwSystem sys(q, n);
    const Scalar nu = Scalar::parse(nu_text);
    const auto res = sys.residual(sys.beta_from_params(lambda, nu));
    std::size_t nonzero = 0;
    for (const auto& r : res) nonzero += r.is_zero() ? 0 : 1;
    report["quiver"] = quiver_json(q);
    report["n"] = n;
    report["lambda"] = scalars(lambda);
    report["nu"] = nu.str();
    report["overlap_elements"] = res.size();
    report["nonzero_residuals"] = nonzero;
    report["residual_zero"] = nonzero == 0;
    code = nonzero == 0 ? 0 : 1;
  });

  // mckay
  std::string group_spec;
  auto* mckay = app.add_subcommand("mckay", "McKay quiver of a finite subgroup of SL2");
  mckay->add_option("--group", group_spec, "cyclic:<l> or bindihedral:<l>")->required();
  mckay->callback([&] {
    const FiniteGroup G = load_group(group_spec);
    const auto mk = mckay_quiver(G);
    report["group"] = G.name();
    report["order"] = G.order();
    report["quiver"] = quiver_json(mk.quiver);
    report["delta"] = mk.delta;
    report["multiplicity_matrix"] = mk.multiplicity;
  });

  // sra nf / reflections
  auto* sra = app.add_subcommand("sra", "symplectic reflection algebras");
  sra->require_subcommand(1);
  SraOptions so;
  std::string expr;
  auto* nf = sra->add_subcommand("nf", "normal form of a word");
  add_sra_options(nf, so);
  nf->add_option("--expr", expr, "word such as \"y1 x1 s12\"")->required();
  nf->callback([&] {
    const FiniteGroup G = load_group(so.group);
    const GammaN gn(G, so.n);
    const SraAlgebra H(gn, params_from(G, so));
    const auto x = H.parse_word(expr);
    const auto y = H.normal_form(x);
    report["input"] = H.str(x);
    report["normal_form"] = H.str(y);
    text_report = H.str(y) + "\n";
  });
  auto* refl = sra->add_subcommand("reflections", "classified symplectic reflections");
  refl->add_option("--group", so.group, "cyclic:<l> or bindihedral:<l>")->required();
  refl->add_option("--n", so.n, "rank n")->required();
  refl->callback([&] {
    const FiniteGroup G = load_group(so.group);
    const GammaN gn(G, so.n);
    const auto rs = enumerate_reflections(gn);
    report["group"] = G.name();
    report["n"] = so.n;
    report["count"] = rs.size();
    ordered_json list = ordered_json::array();
    std::ostringstream t;
    for (const auto& s : rs) {
      ordered_json e;
      e["kind"] = s.kind == ReflectionKind::S ? "S" : "Gamma";
      e["i"] = s.i + 1;
      if (s.kind == ReflectionKind::S) e["j"] = s.j + 1;
      e["gamma"] = s.gamma;
      e["element"] = gn.str(s.element);
      t << e["kind"].get<std::string>() << "  " << gn.str(s.element) << "\n";
      list.push_back(std::move(e));
    }
    report["reflections"] = list;
    text_report = t.str();
  });

  // morita verify
  auto* morita = app.add_subcommand("morita", "corner of the symplectic reflection algebra");
  morita->require_subcommand(1);
  auto* verify = morita->add_subcommand("verify", "certify the corner isomorphism through a degree");
  add_sra_options(verify, so);
  std::uint64_t seed = 1;
  verify->add_option("--degree", degree, "filtration degree")->required();
  verify->add_option("--seed", seed, "seed for the multiplicativity sample (default 1)");
  verify->callback([&] {
    const FiniteGroup G = load_group(so.group);
    const auto rep = verify_morita(G, so.n, params_from(G, so), degree, seed, thread_count_from_env());
    report = ordered_json::parse(to_json(rep));
    code = rep.pass ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = e.what();
    err << j.dump(2) << "\n";
    return 2;
  }
  if (format == "table" && !text_report.empty()) {
    out << text_report;
  } else {
    out << report.dump(2) << "\n";
  }
  return code;
}

}  // namespace wpa
