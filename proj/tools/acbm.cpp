#include <CLI11.hpp>
#include <acbm/verify.hpp>
#include <acbm/zoo.hpp>
#include <future>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace {

using acbm::ModelSpec;
using acbm::Rational;
using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  bool json = false;
  std::string mode = "rational";
  double eps = 0.0;
  std::string path;
  std::string zoo;

  acbm::Tolerance tol() const { return eps > 0.0 ? acbm::Tolerance{eps} : acbm::default_tolerance(); }

  ModelSpec load() const {
    if (!zoo.empty() && !path.empty()) throw UsageError("give either a model file or --zoo, not both");
    if (!zoo.empty()) return acbm::builtin(zoo);
    if (path.empty()) throw UsageError("no model given (file path or --zoo NAME)");
    return acbm::load_model_file(path);
  }
};

template <class F>
auto dispatch(const std::string& mode, F&& f) {
  if (mode == "float") return f(double{});
  return f(Rational{});
}

std::string text(const Rational& q) { return acbm::format_rational(q); }

std::string text(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Json json_scalar(const Rational& q) { return acbm::format_rational(q); }
Json json_scalar(double v) { return v; }

std::string residual_text(double r) {
  std::ostringstream os;
  os << std::setprecision(3) << r;
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class S>
std::string vector_text(const acbm::Tensor<S>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) out += (i ? ", " : "") + text(v(i));
  return out + ")";
}

template <class S>
Json vector_json(const acbm::Tensor<S>& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(json_scalar(v(i)));
  return out;
}

// ---------------------------------------------------------------------------
// validate

template <class S>
int cmd_validate(const Common& c) {
  const ModelSpec spec = c.load();
  const auto s = acbm::build_structure<S>(spec, c.tol());
  const auto report = acbm::validate_structure(s, c.tol());
  if (c.json) {
    Json j;
    j["model"] = spec.name;
    j["backend"] = acbm::ScalarTraits<S>::name;
    j["passed"] = report.ok();
    Json items = Json::array();
    for (const auto& item : report.items)
      items.push_back({{"identity", item.identity},
                       {"passed", item.passed},
                       {"worst_residual", item.worst_residual},
                       {"detail", item.detail}});
    j["identities"] = std::move(items);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "model " << spec.name << " (dim " << spec.dim() << ", " << acbm::ScalarTraits<S>::name << ")\n";
    for (const auto& item : report.items) {
      std::cout << (item.passed ? "  PASS  " : "  FAIL  ") << item.identity << "  worst residual "
                << residual_text(item.worst_residual);
      if (!item.detail.empty()) std::cout << "  " << item.detail;
      std::cout << "\n";
    }
    std::cout << (report.ok() ? "valid\n" : "invalid\n");
  }
  return report.ok() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// classify

template <class S>
acbm::ClassificationReport<S> classification(const acbm::ACBStructure<S>& s, acbm::MetricSide side,
                                             acbm::Tolerance tol) {
  acbm::require_valid(s, tol);
  const auto nabla = acbm::levi_civita(s.lie(), s.g(), tol);
  const auto nabla_tilde = acbm::levi_civita(s.lie(), s.g_tilde(), tol);
  const auto F = acbm::fundamental_F(s, nabla, s.g(), tol);
  const auto Ft = acbm::F_tilde(s, nabla_tilde, F, tol);
  return acbm::classify(s, F, Ft, nabla, nabla_tilde, side, tol);
}

template <class S>
Json classification_json(const acbm::ClassificationReport<S>& r) {
  Json j;
  j["metric"] = r.side == acbm::MetricSide::g ? "g" : "gtilde";
  Json classes;
  for (auto cls : acbm::all_classes()) classes[std::string(acbm::class_name(cls))] = r.member(cls);
  j["classes"] = std::move(classes);
  Json basic = Json::array();
  for (auto cls : r.basic_classes()) basic.push_back(std::string(acbm::class_name(cls)));
  j["basic_classes"] = std::move(basic);
  j["theta_xi"] = json_scalar(r.theta_xi);
  j["theta_star_xi"] = json_scalar(r.theta_star_xi);
  j["div_eta"] = json_scalar(r.div_eta);
  j["div_star_eta"] = json_scalar(r.div_star_eta);
  return j;
}

template <class S>
std::string member_list(const acbm::ClassificationReport<S>& r) {
  std::string out;
  for (auto cls : acbm::all_classes())
    if (r.member(cls)) out += (out.empty() ? "" : " ") + std::string(acbm::class_name(cls));
  return out.empty() ? "none of the listed classes" : out;
}

template <class S>
int cmd_classify(const Common& c, const std::string& metric) {
  const ModelSpec spec = c.load();
  const auto s = acbm::build_structure<S>(spec, c.tol());
  const auto side = metric == "gtilde" ? acbm::MetricSide::g_tilde : acbm::MetricSide::g;
  const auto r = classification(s, side, c.tol());
  if (c.json) {
    Json j;
    j["model"] = spec.name;
    j["backend"] = acbm::ScalarTraits<S>::name;
    const Json body = classification_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "model " << spec.name << ", metric " << metric << " (" << acbm::ScalarTraits<S>::name << ")\n";
  for (auto cls : acbm::all_classes())
    std::cout << "  " << acbm::class_name(cls) << ": " << yes_no(r.member(cls)) << "\n";
  std::string basic;
  for (auto cls : r.basic_classes()) basic += (basic.empty() ? "" : " ") + std::string(acbm::class_name(cls));
  std::cout << "basic classes: " << (basic.empty() ? "none" : basic) << "\n";
  std::cout << "theta(xi) = " << text(r.theta_xi) << ", theta*(xi) = " << text(r.theta_star_xi)
            << ", div eta = " << text(r.div_eta) << ", div* eta = " << text(r.div_star_eta) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

Json verification_json(const acbm::ModelVerification& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"id", c.id},
                      {"passed", c.passed},
                      {"residual", c.residual},
                      {"detail", c.detail},
                      {"statement", c.statement}});
  return {{"model", v.model}, {"backend", v.backend}, {"passed", v.passed()}, {"checks", std::move(checks)}};
}

int cmd_verify(const Common& c, const std::vector<std::string>& paths, bool whole_zoo, std::uint64_t seed,
               std::size_t planes) {
  std::vector<ModelSpec> specs;
  if (whole_zoo) specs = acbm::builtin_catalog();
  if (!c.zoo.empty()) specs.push_back(acbm::builtin(c.zoo));
  for (const auto& p : paths) specs.push_back(acbm::load_model_file(p));
  if (specs.empty()) throw UsageError("verify needs model files, --zoo or --model NAME");

  acbm::VerifyOptions opts;
  opts.tol = c.tol();
  opts.plane_seed = seed;
  opts.random_planes = planes;
  std::vector<std::future<acbm::ModelVerification>> jobs;
  for (const auto& spec : specs)
    jobs.push_back(std::async(std::launch::async, [&spec, &opts, &c] {
      return dispatch(c.mode, [&](auto tag) {
        using S = decltype(tag);
        return acbm::verify_model<S>(spec, opts);
      });
    }));
  std::vector<acbm::ModelVerification> results;
  for (auto& job : jobs) results.push_back(job.get());

  std::size_t total = 0, failed = 0, width = 0, id_width = 0;
  for (const auto& v : results) {
    width = std::max(width, v.model.size());
    for (const auto& chk : v.checks) {
      ++total;
      failed += chk.passed ? 0 : 1;
      id_width = std::max(id_width, chk.id.size());
    }
  }
  if (c.json) {
    Json j;
    j["backend"] = c.mode;
    j["passed"] = failed == 0;
    j["checks"] = total;
    j["failed"] = failed;
    Json models = Json::array();
    for (const auto& v : results) models.push_back(verification_json(v));
    j["models"] = std::move(models);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& v : results)
      for (const auto& chk : v.checks) {
        std::cout << (chk.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2)
                  << v.model << std::setw(static_cast<int>(id_width) + 2) << chk.id << "max residual "
                  << residual_text(chk.residual);
        if (!chk.passed) std::cout << "  " << chk.detail;
        std::cout << "\n";
      }
    std::cout << "verify (" << c.mode << "): " << results.size() << " models, " << total << " checks, " << failed
              << " failed\n";
  }
  return failed == 0 ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// curvature

template <class S>
struct SideResult {
  std::string metric;
  std::optional<acbm::SectionalReport<S>> report;
};

template <class S>
int cmd_curvature(const Common& c, const std::string& plane_indices, const std::vector<std::string>& plane_vectors) {
  const ModelSpec spec = c.load();
  const acbm::Tolerance tol = c.tol();
  const auto a = acbm::analyse(acbm::build_structure<S>(spec, tol), tol);
  const std::size_t d = a.s.dim();

  std::optional<acbm::SectionPlane<S>> plane;
  std::string plane_name;
  if (!plane_indices.empty() && !plane_vectors.empty()) throw UsageError("give either --plane or --plane-vectors");
  if (!plane_indices.empty()) {
    std::size_t i = 0, j = 0;
    char comma = 0;
    std::istringstream in(plane_indices);
    if (!(in >> i >> comma >> j) || comma != ',' || !in.eof())
      throw UsageError("--plane expects two basis indices as i,j");
    if (i >= d || j >= d) throw UsageError("--plane index out of range for dimension " + std::to_string(d));
    plane = acbm::SectionPlane<S>{a.s.basis(i), a.s.basis(j)};
    plane_name = "e" + std::to_string(i) + "^e" + std::to_string(j);
  }
  if (!plane_vectors.empty()) {
    if (plane_vectors.size() != 2) throw UsageError("--plane-vectors expects two vectors");
    std::array<acbm::Tensor<S>, 2> v;
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<std::string> parts;
      std::istringstream in(plane_vectors[k]);
      for (std::string part; std::getline(in, part, ',');) parts.push_back(part);
      if (parts.size() != d)
        throw UsageError("plane vector '" + plane_vectors[k] + "' needs " + std::to_string(d) + " components");
      v[k] = acbm::Tensor<S>::vector(d);
      for (std::size_t i = 0; i < d; ++i) v[k](i) = acbm::from_rational<S>(acbm::parse_rational(parts[i]));
    }
    plane = acbm::SectionPlane<S>{v[0], v[1]};
    plane_name = "span{" + vector_text(v[0]) + ", " + vector_text(v[1]) + "}";
  }

  std::vector<SideResult<S>> sides;
  if (plane) {
    const auto st = a.s.associated(tol);
    sides.push_back({"g", std::nullopt});
    sides.push_back({"g~", std::nullopt});
    try {
      sides[0].report = acbm::kD_relation(*plane, a.s, a.curvature.R, a.curvature.R_D, a.shape.S_op, tol);
    } catch (const acbm::DegeneratePlane&) {
    }
    try {
      sides[1].report = acbm::kD_relation(*plane, st, a.curvature.R_tilde, a.curvature.R_Dt, a.shape.S_tilde, tol);
    } catch (const acbm::DegeneratePlane&) {
    }
    if (!sides[0].report && !sides[1].report)
      throw acbm::DegeneratePlane("plane " + plane_name + " is degenerate for g and for g~");
  }

  const auto& cb = a.curvature;
  if (c.json) {
    Json j;
    j["model"] = spec.name;
    j["backend"] = acbm::ScalarTraits<S>::name;
    j["tau"] = json_scalar(cb.tau);
    j["tau_tilde"] = json_scalar(cb.tau_tilde);
    j["tau_D"] = json_scalar(cb.tau_D);
    j["tau_D_tilde"] = json_scalar(cb.tau_Dt);
    j["rho_xi_xi"] = json_scalar(cb.rho_xi_xi);
    j["rho_tilde_xi_xi"] = json_scalar(cb.rho_tilde_xi_xi);
    if (plane) {
      Json pj;
      pj["name"] = plane_name;
      pj["x"] = vector_json(plane->x);
      pj["y"] = vector_json(plane->y);
      for (const auto& side : sides) {
        if (!side.report) {
          pj[side.metric] = nullptr;
          continue;
        }
        const auto& r = *side.report;
        Json sj;
        sj["type"] = acbm::section_kind_name(r.type.kind);
        sj["orthogonal_to_xi"] = r.type.orthogonal_to_xi;
        sj["k"] = json_scalar(r.k);
        sj["k_D"] = json_scalar(r.k_D);
        sj["kDk_residual"] = r.general.max_abs;
        sj["specialised_residual"] = r.special ? Json(r.special->max_abs) : Json(nullptr);
        pj[side.metric] = std::move(sj);
      }
      j["plane"] = std::move(pj);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "model " << spec.name << " (" << acbm::ScalarTraits<S>::name << ")\n"
              << "  tau = " << text(cb.tau) << ", tau~ = " << text(cb.tau_tilde) << "\n"
              << "  tau^D = " << text(cb.tau_D) << ", tau^D~ = " << text(cb.tau_Dt) << "\n"
              << "  rho(xi,xi) = " << text(cb.rho_xi_xi) << ", rho~(xi,xi) = " << text(cb.rho_tilde_xi_xi) << "\n";
    if (plane) {
      std::cout << "plane " << plane_name << "\n";
      for (const auto& side : sides) {
        const std::string k = side.metric == "g" ? "k" : "k~";
        const std::string kd = side.metric == "g" ? "k^D" : "k^D~";
        if (!side.report) {
          std::cout << "  " << side.metric << ": degenerate\n";
          continue;
        }
        const auto& r = *side.report;
        std::cout << "  " << side.metric << ": " << acbm::section_kind_name(r.type.kind)
                  << (r.type.orthogonal_to_xi ? " (orthogonal to xi)" : "") << ", " << k << " = " << text(r.k) << ", "
                  << kd << " = " << text(r.k_D) << ", kDk residual " << residual_text(r.general.max_abs);
        if (r.special) std::cout << ", specialised residual " << residual_text(r.special->max_abs);
        std::cout << "\n";
      }
    }
  }
  bool ok = true;
  for (const auto& side : sides)
    if (side.report && (!side.report->general.ok(tol) || (side.report->special && !side.report->special->ok(tol))))
      ok = false;
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// report

template <class S>
int cmd_report(const Common& c, std::uint64_t seed) {
  const ModelSpec spec = c.load();
  const acbm::Tolerance tol = c.tol();
  const auto a = acbm::analyse(acbm::build_structure<S>(spec, tol), tol);
  acbm::VerifyOptions opts;
  opts.tol = tol;
  opts.plane_seed = seed;
  const auto v = acbm::verify_model<S>(spec, opts);

  auto coincide = [&](const acbm::Tensor<S>& x, const acbm::Tensor<S>& y) { return acbm::residual(x, y).ok(tol); };
  const std::vector<std::pair<std::string, bool>> relations = {
      {"D = nabla", coincide(a.svk.D.coefficients(), a.nabla.coefficients())},
      {"D~ = nabla~", coincide(a.svk.D_tilde.coefficients(), a.nabla_tilde.coefficients())},
      {"D~ = D", coincide(a.svk.D_tilde.coefficients(), a.svk.D.coefficients())},
      {"D phi = 0", acbm::zero_residual(a.svk.D_phi).ok(tol)},
      {"D~ phi = 0", acbm::zero_residual(a.svk.D_tilde_phi).ok(tol)},
      {"D~ phi = D phi", coincide(a.svk.D_tilde_phi, a.svk.D_phi)},
      {"D = phiB-connection", coincide(a.svk.D.coefficients(), acbm::phiB_connection(a.s, a.nabla).coefficients())},
  };
  const auto scalars = acbm::reported_scalars<S>(spec, tol);
  std::size_t failed = 0;
  for (const auto& chk : v.checks) failed += chk.passed ? 0 : 1;

  if (c.json) {
    Json j;
    j["model"] = spec.name;
    j["description"] = spec.description;
    j["dim"] = spec.dim();
    j["backend"] = acbm::ScalarTraits<S>::name;
    j["g"] = classification_json(a.report);
    j["gtilde"] = classification_json(a.report_tilde);
    Json rel;
    for (const auto& [name, value] : relations) rel[name] = value;
    j["relations"] = std::move(rel);
    Json sc;
    for (const auto& [name, value] : scalars) sc[name] = value;
    j["scalars"] = std::move(sc);
    j["verify"] = verification_json(v);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "model " << spec.name << " (dim " << spec.dim() << ", " << acbm::ScalarTraits<S>::name << ")\n";
  if (!spec.description.empty()) std::cout << "  " << spec.description << "\n";
  std::cout << "g-structure:  " << member_list(a.report) << "\n"
            << "g~-structure: " << member_list(a.report_tilde) << "\n"
            << "relations:\n";
  for (const auto& [name, value] : relations) std::cout << "  " << name << ": " << yes_no(value) << "\n";
  std::cout << "scalars:\n";
  for (const auto& [name, value] : scalars) std::cout << "  " << name << " = " << text(value) << "\n";
  std::cout << "verify: " << v.checks.size() << " checks, " << failed << " failed";
  for (const auto& chk : v.checks)
    if (!chk.passed) std::cout << "\n  FAIL " << chk.id << ": " << chk.detail;
  std::cout << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// export and list

int cmd_export(const Common& c, std::optional<std::size_t> random_n, std::uint64_t seed, const std::string& out) {
  const ModelSpec spec = random_n ? acbm::random_structure(seed, *random_n) : c.load();
  if (out.empty()) {
    std::cout << acbm::to_json(spec);
  } else {
    acbm::save_model_file(spec, out);
  }
  return kOk;
}

int cmd_list(const Common& c) {
  Json j = Json::array();
  for (const auto& name : acbm::zoo_names()) {
    const ModelSpec spec = acbm::builtin_unchecked(name);
    if (c.json) {
      j.push_back({{"name", name}, {"dim", spec.dim()}, {"description", spec.description}});
    } else {
      std::cout << std::left << std::setw(10) << name << " dim " << spec.dim() << "  " << spec.description << "\n";
    }
  }
  if (c.json) std::cout << j.dump(2) << "\n";
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Almost contact B-metric structures on left-invariant Lie algebra models"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool model_input) {
    sub->add_flag("--json", common.json, "Machine-readable output");
    sub->add_option("--mode", common.mode, "Scalar backend")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--eps", common.eps, "Float tolerance (default: $ACBM_EPS, else 1e-9)")->check(CLI::PositiveNumber);
    if (model_input) {
      sub->add_option("model", common.path, "Model file (JSON)");
      sub->add_option("--zoo", common.zoo, "Use a built-in model instead of a file");
    }
  };

  auto* validate = app.add_subcommand("validate", "Check the structure identities");
  add_common(validate, true);

  std::string metric = "g";
  auto* classify = app.add_subcommand("classify", "Class memberships and Lee-form values");
  add_common(classify, true);
  classify->add_option("--metric", metric, "Metric side")->check(CLI::IsMember({"g", "gtilde"}));

  std::vector<std::string> paths;
  bool whole_zoo = false;
  std::uint64_t seed = 0;
  std::size_t planes = 20;
  auto* verify = app.add_subcommand("verify", "Run the theorem suite");
  add_common(verify, false);
  verify->add_option("models", paths, "Model files (JSON)");
  verify->add_flag("--zoo", whole_zoo, "Verify every built-in model");
  verify->add_option("--model", common.zoo, "Verify one built-in model");
  verify->add_option("--seed", seed, "Seed of the random test planes");
  verify->add_option("--planes", planes, "Number of random test planes per model")->check(CLI::PositiveNumber);

  std::string plane;
  std::vector<std::string> plane_vectors;
  auto* curvature = app.add_subcommand("curvature", "Scalar and sectional curvatures");
  add_common(curvature, true);
  curvature->add_option("--plane", plane, "Plane spanned by two basis vectors, as i,j");
  curvature->add_option("--plane-vectors", plane_vectors, "Plane spanned by two vectors of comma-separated scalars")
      ->expected(2);

  auto* report = app.add_subcommand("report", "Everything computed for one model");
  add_common(report, true);
  report->add_option("--seed", seed, "Seed of the random test planes");

  std::optional<std::size_t> random_n;
  std::string out;
  auto* exporter = app.add_subcommand("export", "Write a model in canonical JSON");
  add_common(exporter, true);
  exporter->add_option("--random", random_n, "Random model of dimension 2n+1")->check(CLI::PositiveNumber);
  exporter->add_option("--seed", seed, "Seed for --random");
  exporter->add_option("-o,--output", out, "Output file (default: stdout)");

  auto* list = app.add_subcommand("list", "Names of the built-in models");
  add_common(list, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (validate->parsed()) return dispatch(common.mode, [&](auto tag) { return cmd_validate<decltype(tag)>(common); });
  if (classify->parsed())
    return dispatch(common.mode, [&](auto tag) { return cmd_classify<decltype(tag)>(common, metric); });
  if (verify->parsed()) return cmd_verify(common, paths, whole_zoo, seed, planes);
  if (curvature->parsed())
    return dispatch(common.mode, [&](auto tag) { return cmd_curvature<decltype(tag)>(common, plane, plane_vectors); });
  if (report->parsed()) return dispatch(common.mode, [&](auto tag) { return cmd_report<decltype(tag)>(common, seed); });
  if (exporter->parsed()) return cmd_export(common, random_n, seed, out);
  return cmd_list(common);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const acbm::StructureInvalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const acbm::DegeneratePlane& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const acbm::CrossCheckMismatch& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const acbm::InvariantViolation& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
