#include <acbm/verify.hpp>
#include <algorithm>
#include <exception>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace acbm {

namespace {

const std::vector<CheckInfo> kChecks = {
    {"structure", "phi^2 = -Id + eta (x) xi, eta(xi) = 1, compatibility of g with phi, g~ a B-metric"},
    {"f-identities", "F and F~ are symmetric in their last two slots, split along phi and give nabla xi, nabla eta"},
    {"conversions", "F~, Phi and F computed directly agree with their expressions through F and Phi"},
    {"svk-natural", "D g = D xi = D eta = 0 with D, its potential and its torsion in closed form"},
    {"svk-tilde-natural", "D~ g~ = D~ xi = D~ eta = 0 with D~, its potential and its torsion in closed form"},
    {"torsion-potential", "the torsion and the potential of D and of D~ determine each other"},
    {"d-equals-nabla", "D = nabla iff nabla xi = 0"},
    {"dt-equals-nablat", "D~ = nabla~ iff nabla~ xi = 0"},
    {"u1-transfer", "nabla xi = 0 iff nabla~ xi = 0"},
    {"four-connections", "D = nabla, D~ = nabla~, nabla xi = 0 and nabla~ xi = 0 are equivalent"},
    {"cosymplectic", "D~ = nabla or D = nabla~ forces D = D~ = nabla = nabla~, which holds iff F = F~ = 0"},
    {"d-natural", "D is natural iff the structure is in U2, and then D is the phiB-connection"},
    {"dt-equals-d", "D~ = D iff the structure is in U2"},
    {"dphi-coincide", "D~ phi = D phi iff both structures are in F3+U3"},
    {"dt-natural", "D~ is natural for g~ iff the g~-structure is in F1+F2+U3"},
    {"both-natural", "D and D~ are both natural iff both structures are in U3"},
    {"nabla-xi-table", "nabla xi has the form prescribed by every basic class the structure belongs to"},
    {"chains", "the symmetric, skew and vanishing nabla eta chains are consistent for g and g~"},
    {"hv-components", "horizontal and vertical parts of the potentials and torsions match their closed forms"},
    {"trace-identity", "tr S = tr S~ = -div eta = -theta*(xi)"},
    {"curvature-D", "R^D, R^D~ from R, R~ and the shape operators; R(x,y) xi from nabla S"},
    {"ricci-D", "rho^D, rho^D~, rho(xi,xi) and rho~(xi,xi) from their formulas"},
    {"scalar-D", "tau^D and tau^D~ from their formulas"},
    {"sectional-D", "k^D from k on random, recorded and basis planes; k^D = 0 on xi-sections"},
};

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

struct Claim {
  std::string name;
  Residual r;
};

class Outcome {
 public:
  explicit Outcome(Tolerance tol) : tol_(tol) {}

  void identity(std::string_view name, const Residual& r) {
    residual_ = std::max(residual_, r.max_abs);
    if (r.ok(tol_)) return;
    passed_ = false;
    note(std::string(name) + " off by " + format_double(r.max_abs));
  }

  void equivalence(const std::vector<Claim>& claims) {
    const bool first = claims.front().r.ok(tol_);
    const bool agree = std::all_of(claims.begin(), claims.end(), [&](const Claim& c) { return c.r.ok(tol_) == first; });
    std::string line;
    for (const auto& c : claims) {
      const bool value = c.r.ok(tol_);
      if (agree ? value : !value) residual_ = std::max(residual_, c.r.max_abs);
      line += (line.empty() ? "" : ", ") + c.name + ": " + (value ? "yes" : "no");
    }
    if (!agree) passed_ = false;
    note(line);
  }

  void implication(const Claim& premise, const Claim& conclusion) {
    if (!premise.r.ok(tol_)) return;
    if (conclusion.r.ok(tol_)) {
      residual_ = std::max(residual_, conclusion.r.max_abs);
      return;
    }
    passed_ = false;
    residual_ = std::max(residual_, conclusion.r.max_abs);
    note(premise.name + " but not " + conclusion.name);
  }

  void require(bool ok, std::string_view what) {
    if (ok) return;
    passed_ = false;
    note(std::string(what));
  }

  void note(const std::string& text) { detail_ += (detail_.empty() ? "" : "; ") + text; }

  void fail(const std::string& text) {
    passed_ = false;
    note(text);
  }

  void fill(CheckResult& out) const {
    out.passed = passed_;
    out.residual = residual_;
    out.detail = detail_;
  }

 private:
  Tolerance tol_;
  bool passed_ = true;
  double residual_ = 0.0;
  std::string detail_;
};

/// Computes on first use and replays the exception on every later use.
template <class T>
class Lazy {
 public:
  explicit Lazy(std::function<T()> make) : make_(std::move(make)) {}
  const T& get() {
    if (!done_) {
      done_ = true;
      try {
        value_.emplace(make_());
      } catch (...) {
        error_ = std::current_exception();
      }
    }
    if (error_) std::rethrow_exception(error_);
    return *value_;
  }

 private:
  std::function<T()> make_;
  bool done_ = false;
  std::optional<T> value_;
  std::exception_ptr error_;
};

Residual any_of(const Residual& a, const Residual& b, Tolerance tol) { return a.ok(tol) ? a : b; }

Residual merged(std::initializer_list<Residual> rs) {
  Residual out;
  for (const auto& r : rs) out.merge(r);
  return out;
}

template <class S>
Residual naturality_all(const AffineConnection<S>& conn, const ACBStructure<S>& s, const Metric<S>& m) {
  const auto n = naturality(conn, s, m);
  return merged({n.phi, n.xi, n.eta, n.metric});
}

template <class S>
struct Context {
  Context(const ModelSpec& spec_in, const ACBStructure<S>& s_in, const VerifyOptions& opts_in)
      : spec(spec_in),
        opts(opts_in),
        tol(opts_in.tol),
        s(s_in),
        st(s_in.associated(opts_in.tol)),
        F([this] { return fundamental_F(s, nabla, s.g(), tol); }),
        Ft([this] { return F_tilde(s, nabla_tilde, F.get(), tol); }),
        Phi([this] { return potential_Phi(s, nabla, nabla_tilde, F.get(), tol); }),
        svk([this] { return svk_pair(s, nabla, nabla_tilde, tol); }),
        shape([this] { return shape_operators(s, nabla, nabla_tilde, Phi.get(), tol); }),
        report([this] { return classify(s, F.get(), Ft.get(), nabla, nabla_tilde, MetricSide::g, tol); }),
        report_tilde([this] { return classify(s, F.get(), Ft.get(), nabla, nabla_tilde, MetricSide::g_tilde, tol); }),
        curv([this] { return curvature_bundle(s, nabla, nabla_tilde, svk.get(), shape.get(), tol, false); }) {
    nabla = levi_civita(s.lie(), s.g(), tol);
    if (spec.gamma_perturbation)
      nabla = AffineConnection<S>(nabla.coefficients() + convert_from_rational<S>(*spec.gamma_perturbation));
    nabla_tilde = levi_civita(s.lie(), s.g_tilde(), tol);
    D = svk_closed_form(s, nabla);
    Dt = svk_closed_form(s, nabla_tilde);
    phi_vec = nabla_tilde.coefficients() - nabla.coefficients();
  }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const ModelSpec& spec;
  VerifyOptions opts;
  Tolerance tol;
  ACBStructure<S> s;
  ACBStructure<S> st;
  AffineConnection<S> nabla, nabla_tilde, D, Dt;
  Tensor<S> phi_vec;

  Lazy<FTensor<S>> F, Ft;
  Lazy<PotentialPhi<S>> Phi;
  Lazy<SvkPair<S>> svk;
  Lazy<ShapeData<S>> shape;
  Lazy<ClassificationReport<S>> report, report_tilde;
  Lazy<CurvatureBundle<S>> curv;

  Residual xi_parallel() const { return zero_residual(covariant_derivative(nabla, s.xi())); }
  Residual xi_parallel_tilde() const { return zero_residual(covariant_derivative(nabla_tilde, s.xi())); }
};

template <class S>
void svk_side(Outcome& o, const ACBStructure<S>& s, const AffineConnection<S>& conn, const AffineConnection<S>& D,
              const Metric<S>& m) {
  o.identity("closed form vs projector form", residual(D.coefficients(), svk_projector_form(s, conn).coefficients()));
  const auto nat = naturality(D, s, m);
  o.identity("xi not parallel", nat.xi);
  o.identity("eta not parallel", nat.eta);
  o.identity("metric not parallel", nat.metric);
  o.identity("potential vs closed form",
             residual(D.coefficients() - conn.coefficients(), potential_closed_form(s, conn)));
  o.identity("torsion vs closed form", residual(torsion(s.lie(), D), torsion_closed_form(s, conn)));
}

template <class S>
void torsion_potential_side(Outcome& o, std::string_view tag, const ACBStructure<S>& s, const AffineConnection<S>& conn,
                            const AffineConnection<S>& D, const Metric<S>& m, Tolerance tol) {
  const Tensor<S> Q = lower_last(D.coefficients() - conn.coefficients(), m);
  const Tensor<S> T = lower_last(torsion(s.lie(), D), m);
  o.identity(std::string(tag) + " T from Q", residual(torsion_from_potential(Q), T));
  o.identity(std::string(tag) + " Q from T", residual(potential_from_torsion(T, tol), Q));
}

template <class S>
void sectional(Outcome& o, Context<S>& c) {
  const auto& cb = c.curv.get();
  const auto& sh = c.shape.get();
  struct Side {
    const char* tag;
    const ACBStructure<S>& ms;
    const Tensor<S>& R;
    const Tensor<S>& R_D;
    const Tensor<S>& S_op;
  };
  const Side sides[] = {{"g", c.s, cb.R, cb.R_D, sh.S_op}, {"g~", c.st, cb.R_tilde, cb.R_Dt, sh.S_tilde}};

  std::vector<SectionPlane<S>> planes = random_planes(c.s, c.opts.random_planes, c.opts.plane_seed);
  const std::size_t random_count = planes.size();
  for (const auto& p : c.spec.planes) planes.push_back({convert_from_rational<S>(p.x), convert_from_rational<S>(p.y)});
  for (std::size_t i = 0; i < c.s.dim(); ++i)
    for (std::size_t j = i + 1; j < c.s.dim(); ++j) planes.push_back({c.s.basis(i), c.s.basis(j)});

  Residual general, special, xi_zero;
  std::size_t evaluated = 0, xi_sections = 0, specials = 0;
  for (std::size_t k = 0; k < planes.size(); ++k)
    for (const auto& side : sides) {
      std::optional<SectionalReport<S>> rep;
      try {
        rep = kD_relation(planes[k], side.ms, side.R, side.R_D, side.S_op, c.tol);
      } catch (const DegeneratePlane&) {
        if (k < random_count) throw;
        continue;
      }
      ++evaluated;
      general.merge(rep->general);
      if (rep->special) {
        ++specials;
        special.merge(*rep->special);
      }
      if (rep->type.kind == SectionKind::xi_section) {
        ++xi_sections;
        xi_zero.merge(scalar_residual(rep->k_D, S(0)));
      }
    }
  o.identity("general relation", general);
  o.identity("specialised relation", special);
  o.identity("k^D on xi-sections", xi_zero);
  o.require(xi_sections > 0, "no xi-section evaluated");
  o.note(std::to_string(random_count) + " random planes, " + std::to_string(evaluated) + " evaluations, " +
         std::to_string(xi_sections) + " xi-sections, " + std::to_string(specials) + " specialised");
}

template <class S>
std::map<std::string_view, std::function<void(Outcome&)>> check_table(Context<S>& c) {
  std::map<std::string_view, std::function<void(Outcome&)>> t;
  const Tolerance tol = c.tol;

  t["f-identities"] = [&c](Outcome& o) {
    const auto r = f_identity_residuals(c.s, fundamental_tensor(c.s, c.nabla, c.s.g()), c.nabla, c.s.g());
    o.identity("F symmetry", r.symmetry);
    o.identity("F phi-decomposition", r.phi_decomposition);
    o.identity("nabla eta from F", r.nabla_eta);
    o.identity("nabla xi from F", r.nabla_xi);
    const auto rt =
        f_identity_residuals(c.s, fundamental_tensor(c.s, c.nabla_tilde, c.s.g_tilde()), c.nabla_tilde, c.s.g_tilde());
    o.identity("F~ symmetry", rt.symmetry);
    o.identity("F~ phi-decomposition", rt.phi_decomposition);
    o.identity("nabla~ eta from F~", rt.nabla_eta);
    o.identity("nabla~ xi from F~", rt.nabla_xi);
  };
  t["conversions"] = [&c](Outcome& o) {
    const Tensor<S> F = fundamental_tensor(c.s, c.nabla, c.s.g());
    const Tensor<S> Ft = fundamental_tensor(c.s, c.nabla_tilde, c.s.g_tilde());
    const Tensor<S> phi_low = lower_last(c.phi_vec, c.s.g());
    o.identity("F~ from F", residual(Ft, F_tilde_from_F(c.s, F)));
    o.identity("Phi from F", residual(phi_low, phi_potential_from_F(c.s, F)));
    o.identity("F from Phi", residual(F, F_from_phi_potential(c.s, phi_low)));
  };
  t["svk-natural"] = [&c](Outcome& o) { svk_side(o, c.s, c.nabla, c.D, c.s.g()); };
  t["svk-tilde-natural"] = [&c](Outcome& o) { svk_side(o, c.s, c.nabla_tilde, c.Dt, c.s.g_tilde()); };
  t["torsion-potential"] = [&c, tol](Outcome& o) {
    torsion_potential_side(o, "D:", c.s, c.nabla, c.D, c.s.g(), tol);
    torsion_potential_side(o, "D~:", c.s, c.nabla_tilde, c.Dt, c.s.g_tilde(), tol);
  };
  t["d-equals-nabla"] = [&c](Outcome& o) {
    o.equivalence(
        {{"D = nabla", residual(c.D.coefficients(), c.nabla.coefficients())}, {"nabla xi = 0", c.xi_parallel()}});
  };
  t["dt-equals-nablat"] = [&c](Outcome& o) {
    o.equivalence({{"D~ = nabla~", residual(c.Dt.coefficients(), c.nabla_tilde.coefficients())},
                   {"nabla~ xi = 0", c.xi_parallel_tilde()}});
  };
  t["u1-transfer"] = [&c](Outcome& o) {
    o.equivalence({{"nabla xi = 0", c.xi_parallel()}, {"nabla~ xi = 0", c.xi_parallel_tilde()}});
  };
  t["four-connections"] = [&c](Outcome& o) {
    o.equivalence({{"D = nabla", residual(c.D.coefficients(), c.nabla.coefficients())},
                   {"D~ = nabla~", residual(c.Dt.coefficients(), c.nabla_tilde.coefficients())},
                   {"nabla xi = 0", c.xi_parallel()},
                   {"nabla~ xi = 0", c.xi_parallel_tilde()}});
  };
  t["cosymplectic"] = [&c, tol](Outcome& o) {
    const Residual four = merged({residual(c.D.coefficients(), c.nabla.coefficients()),
                                  residual(c.Dt.coefficients(), c.nabla_tilde.coefficients()),
                                  residual(c.D.coefficients(), c.Dt.coefficients())});
    const Residual premise = any_of(residual(c.Dt.coefficients(), c.nabla.coefficients()),
                                    residual(c.D.coefficients(), c.nabla_tilde.coefficients()), tol);
    o.implication({"D~ = nabla or D = nabla~", premise}, {"all four coincide", four});
    const Residual cosymplectic = merged({zero_residual(fundamental_tensor(c.s, c.nabla, c.s.g())),
                                          zero_residual(fundamental_tensor(c.s, c.nabla_tilde, c.s.g_tilde()))});
    o.equivalence({{"all four coincide", four}, {"F = F~ = 0", cosymplectic}});
  };
  t["d-natural"] = [&c](Outcome& o) {
    const Residual u2 = c.report.get().residual_of(ClassId::U2);
    o.identity("D phi vs closed form", residual(covariant_phi(c.s, c.D), covariant_phi_D_closed_form(c.s, c.nabla)));
    o.equivalence({{"D natural", naturality_all(c.D, c.s, c.s.g())}, {"U2", u2}});
    o.implication({"U2", u2},
                  {"D = phiB-connection", residual(c.D.coefficients(), phiB_connection(c.s, c.nabla).coefficients())});
  };
  t["dt-equals-d"] = [&c](Outcome& o) {
    o.identity("D~ vs D + Phi", residual(c.Dt.coefficients(), dtilde_from_d(c.s, c.D, c.phi_vec).coefficients()));
    o.equivalence({{"D~ = D", residual(c.Dt.coefficients(), c.D.coefficients())},
                   {"U2", c.report.get().residual_of(ClassId::U2)}});
  };
  t["dphi-coincide"] = [&c](Outcome& o) {
    const Tensor<S> d_phi = covariant_phi(c.s, c.D);
    const Tensor<S> dt_phi = covariant_phi(c.s, c.Dt);
    o.identity("D~ phi vs D phi + Phi terms", residual(dt_phi, dtilde_phi_relation(c.s, d_phi, c.phi_vec)));
    o.equivalence({{"D~ phi = D phi", residual(dt_phi, d_phi)},
                   {"both in F3+U3", merged({c.report.get().residual_of(ClassId::F3_U3),
                                             c.report_tilde.get().residual_of(ClassId::F3_U3)})}});
  };
  t["dt-natural"] = [&c](Outcome& o) {
    o.equivalence({{"D~ natural", naturality_all(c.Dt, c.s, c.s.g_tilde())},
                   {"g~ in F1+F2+U3", c.report_tilde.get().residual_of(ClassId::F1_F2_U3)}});
  };
  t["both-natural"] = [&c](Outcome& o) {
    o.equivalence(
        {{"D and D~ natural", merged({naturality_all(c.D, c.s, c.s.g()), naturality_all(c.Dt, c.s, c.s.g_tilde())})},
         {"both in U3",
          merged({c.report.get().residual_of(ClassId::U3), c.report_tilde.get().residual_of(ClassId::U3)})}});
  };
  t["nabla-xi-table"] = [&c, tol](Outcome& o) {
    for (const auto* rep : {&c.report.get(), &c.report_tilde.get()}) {
      const std::string side = rep->side == MetricSide::g ? " (g)" : " (g~)";
      for (const auto& row : nabla_xi_table_check(c.s, c.nabla, c.nabla_tilde, *rep, tol))
        o.identity(std::string(class_name(row.cls)) + side, row.residual);
    }
  };
  t["chains"] = [&c, tol](Outcome& o) {
    const auto& p = c.svk.get();
    const auto& sh = c.shape.get();
    const auto g_chains = equivalence_chains(c.s, c.nabla, p.D, p.pt, sh.S_op, sh.S_diamond, tol);
    const auto t_chains =
        equivalence_chains(c.st, c.nabla_tilde, p.D_tilde, p.pt_tilde, sh.S_tilde, sh.S_tilde_diamond, tol);
    for (const auto* chains : {&g_chains, &t_chains}) {
      const std::string side = chains == &g_chains ? "g " : "g~ ";
      for (const auto& ch : *chains) {
        o.require(ch.consistent(), side + ch.label + " inconsistent");
        o.note(side + ch.label + ": " + (ch.consistent() ? (ch.value() ? "yes" : "no") : "mixed"));
      }
    }
  };
  t["hv-components"] = [&c, tol](Outcome&) {
    hv_components(c.s, c.nabla, c.nabla_tilde, c.svk.get(), c.shape.get(), c.Phi.get(), tol);
  };
  t["trace-identity"] = [&c](Outcome& o) {
    const S tr_S = S(-1) * trace(covariant_derivative(c.nabla, c.s.xi()));
    const S tr_St = S(-1) * trace(covariant_derivative(c.nabla_tilde, c.s.xi()));
    const S div = divergence(c.s.eta(), c.nabla, c.s.g());
    o.identity("tr S vs tr S~", scalar_residual(tr_S, tr_St));
    o.identity("tr S vs -div eta", scalar_residual(tr_S, S(-1) * div));
    o.identity("tr S vs -theta*(xi)", scalar_residual(tr_S, S(-1) * c.report.get().theta_star_xi));
  };
  t["curvature-D"] = [&c](Outcome& o) {
    const auto& r = c.curv.get().residuals;
    o.identity("R^D", r.R_D);
    o.identity("R^D~", r.R_Dt);
    o.identity("R(x,y) xi", r.R_xi);
    o.identity("R~(x,y) xi", r.R_xi_tilde);
  };
  t["ricci-D"] = [&c](Outcome& o) {
    const auto& r = c.curv.get().residuals;
    o.identity("rho^D", r.rho_D);
    o.identity("rho^D~", r.rho_Dt);
    o.identity("rho(xi,xi)", r.rho_xi_xi);
    o.identity("rho~(xi,xi)", r.rho_xi_xi_tilde);
  };
  t["scalar-D"] = [&c](Outcome& o) {
    const auto& r = c.curv.get().residuals;
    o.identity("tau^D", r.tau_D);
    o.identity("tau^D~", r.tau_Dt);
  };
  t["sectional-D"] = [&c](Outcome& o) { sectional(o, c); };
  return t;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() { return kChecks; }

bool ModelVerification::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& ModelVerification::check(std::string_view id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw std::out_of_range("no check named " + std::string(id));
}

template <class S>
ModelVerification verify_model(const ModelSpec& spec, const VerifyOptions& opts) {
  const ACBStructure<S> s = build_structure<S>(spec, opts.tol);
  ModelVerification out;
  out.model = spec.name;
  out.backend = ScalarTraits<S>::name;

  const ValidationReport validation = validate_structure(s, opts.tol);
  CheckResult structure{
      std::string(kChecks.front().id), std::string(kChecks.front().statement), validation.ok(), 0.0, {}};
  for (const auto& item : validation.items) {
    structure.residual = std::max(structure.residual, item.worst_residual);
    if (!item.passed)
      structure.detail += (structure.detail.empty() ? "" : "; ") + item.identity +
                          (item.detail.empty() ? "" : " (" + item.detail + ")");
  }
  out.checks.push_back(structure);

  std::optional<Context<S>> context;
  std::string context_error;
  if (validation.ok()) {
    try {
      context.emplace(spec, s, opts);
    } catch (const std::exception& e) {
      context_error = e.what();
    }
  } else {
    context_error = "skipped: structure invalid";
  }

  auto table = context ? check_table(*context) : std::map<std::string_view, std::function<void(Outcome&)>>{};
  for (std::size_t k = 1; k < kChecks.size(); ++k) {
    CheckResult r{std::string(kChecks[k].id), std::string(kChecks[k].statement), false, 0.0, {}};
    Outcome o(opts.tol);
    if (!context) {
      o.fail(context_error);
    } else {
      try {
        table.at(kChecks[k].id)(o);
      } catch (const std::exception& e) {
        o.fail(e.what());
      }
    }
    o.fill(r);
    out.checks.push_back(std::move(r));
  }
  return out;
}

template <class S>
std::vector<SectionPlane<S>> random_planes(const ACBStructure<S>& s, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-3, 3);
  const std::size_t d = s.dim();
  auto draw = [&] {
    Tensor<S> v = S(0) * s.xi();
    for (std::size_t i = 0; i < d; ++i) v(i) = S(pick(rng));
    return v;
  };
  auto usable = [&](const SectionPlane<S>& p) {
    return !is_zero(plane_norm(p, s.g()), Tolerance{}) && !is_zero(plane_norm(p, s.g_tilde()), Tolerance{});
  };
  std::vector<SectionPlane<S>> out;
  const std::size_t xi_count = count / 4 + 1;
  for (std::size_t attempt = 0; out.size() < count && attempt < 100 * (count + 1); ++attempt) {
    SectionPlane<S> p{draw(), draw()};
    if (usable(p)) out.push_back(std::move(p));
  }
  for (std::size_t attempt = 0; out.size() < count + xi_count && attempt < 100 * (xi_count + 1); ++attempt) {
    Tensor<S> h = draw();
    h = h - s.eta_of(h) * s.xi();
    SectionPlane<S> p{h, s.xi()};
    if (usable(p)) out.push_back(std::move(p));
  }
  if (out.size() < count + xi_count)
    throw GenerationFailed("random_planes: not enough non-degenerate planes for seed " + std::to_string(seed));
  return out;
}

template <class S>
std::vector<std::pair<std::string, double>> reported_scalars(const ModelSpec& spec, Tolerance tol) {
  const Analysis<S> a = analyse(build_structure<S>(spec, tol), tol);
  std::vector<std::pair<std::string, double>> out;
  auto put = [&](std::string name, const S& v) { out.emplace_back(std::move(name), to_double(v)); };
  put("theta(xi)", a.report.theta_xi);
  put("theta*(xi)", a.report.theta_star_xi);
  put("div eta", a.report.div_eta);
  put("div* eta", a.report.div_star_eta);
  put("theta~(xi)", a.report_tilde.theta_xi);
  put("theta~*(xi)", a.report_tilde.theta_star_xi);
  put("tr S", a.shape.trace_S);
  put("tr S~", a.shape.trace_S_tilde);
  put("tau", a.curvature.tau);
  put("tau~", a.curvature.tau_tilde);
  put("tau^D", a.curvature.tau_D);
  put("tau^D~", a.curvature.tau_Dt);
  put("rho(xi,xi)", a.curvature.rho_xi_xi);
  put("rho~(xi,xi)", a.curvature.rho_tilde_xi_xi);

  std::vector<std::pair<std::string, SectionPlane<S>>> planes;
  for (const auto& p : spec.planes)
    planes.emplace_back(p.label, SectionPlane<S>{convert_from_rational<S>(p.x), convert_from_rational<S>(p.y)});
  for (std::size_t i = 0; i < a.s.dim(); ++i)
    for (std::size_t j = i + 1; j < a.s.dim(); ++j)
      planes.emplace_back("e" + std::to_string(i) + "^e" + std::to_string(j),
                          SectionPlane<S>{a.s.basis(i), a.s.basis(j)});
  const ACBStructure<S> st = a.s.associated(tol);
  for (const auto& [label, plane] : planes) {
    try {
      const auto r = kD_relation(plane, a.s, a.curvature.R, a.curvature.R_D, a.shape.S_op, tol);
      put("k[" + label + "]", r.k);
      put("k^D[" + label + "]", r.k_D);
    } catch (const DegeneratePlane&) {
    }
    try {
      const auto r = kD_relation(plane, st, a.curvature.R_tilde, a.curvature.R_Dt, a.shape.S_tilde, tol);
      put("k~[" + label + "]", r.k);
      put("k^D~[" + label + "]", r.k_D);
    } catch (const DegeneratePlane&) {
    }
  }
  return out;
}

#define ACBM_INSTANTIATE(S)                                                                                \
  template ModelVerification verify_model<S>(const ModelSpec&, const VerifyOptions&);                      \
  template std::vector<SectionPlane<S>> random_planes(const ACBStructure<S>&, std::size_t, std::uint64_t); \
  template std::vector<std::pair<std::string, double>> reported_scalars<S>(const ModelSpec&, Tolerance);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
