#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "epstein/arith.hpp"
#include "epstein/characters.hpp"
#include "epstein/distrib.hpp"
#include "epstein/errors.hpp"
#include "epstein/eval.hpp"
#include "epstein/forms.hpp"
#include "epstein/parallel.hpp"
#include "epstein/randmodel.hpp"
#include "epstein/zeros.hpp"

#ifndef EPSTEIN_VERSION
#define EPSTEIN_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace epstein;

struct Common {
  int threads = 0;
  std::string format = "auto";
  std::string output;
  std::uint64_t seed = 1;
  double eps = 1e-12;
  double t_max = 600.0;
};

struct Target {
  std::optional<std::int64_t> disc;
  std::string form;
};

QuadForm parse_form(const std::string& text) {
  std::int64_t v[3];
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ',' || c2 != ',' || !in.eof()) {
    throw std::invalid_argument("--form expects a,b,c");
  }
  const QuadForm Q{v[0], v[1], v[2]};
  if (!Q.positive_definite()) throw std::invalid_argument("--form must be positive definite");
  return Q;
}

cplx parse_complex(const std::string& text) {
  double re = 0.0, im = 0.0;
  char c = 0;
  std::istringstream in(text);
  if (!(in >> re)) throw std::invalid_argument("--s expects re,im");
  if (!in.eof()) {
    if (!(in >> c >> im) || c != ',' || !in.eof()) throw std::invalid_argument("--s expects re,im");
  }
  return {re, im};
}

QuadForm resolve_form(const Target& t) {
  if (!t.form.empty()) {
    const QuadForm Q = parse_form(t.form);
    if (t.disc && *t.disc != Q.disc()) throw std::invalid_argument("--form does not have discriminant --disc");
    return Q;
  }
  if (!t.disc) throw std::invalid_argument("one of --disc or --form is required");
  return principal_form(make_discriminant(*t.disc));
}

std::int64_t resolve_disc(const Target& t) {
  if (t.disc) return make_discriminant(*t.disc).value;
  return resolve_form(t).disc();
}

json form_json(const QuadForm& Q) { return json::array({Q.a, Q.b, Q.c}); }
json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json result_json(const EvalResult& r) {
  return json{{"value", cplx_json(r.value)}, {"abs_error_est", r.abs_error_est}, {"terms_used", r.terms_used}};
}

json mc_json(const MCEstimate& e) {
  return json{{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}, {"resampled", e.resampled}};
}

class Output {
 public:
  Output(const Common& c, std::string command) : common_(c), command_(std::move(command)) {}

  /// Recorded run parameters; every output carries them.
  json params = json::object();
  std::optional<std::int64_t> P, n;

  json provenance() const {
    json p;
    p["tool"] = "epstein";
    p["version"] = EPSTEIN_VERSION;
    p["command"] = command_;
    p["seed"] = common_.seed;
    p["eps"] = common_.eps;
    p["P"] = P ? json(*P) : json(nullptr);
    p["n"] = n ? json(*n) : json(nullptr);
    p["params"] = params;
    return p;
  }

  bool csv(bool bulk) const {
    if (common_.format == "csv") return true;
    if (common_.format == "json") return false;
    return bulk;
  }

  void json_payload(json result) const {
    json doc;
    doc["provenance"] = provenance();
    doc["result"] = std::move(result);
    write(doc.dump(2) + "\n");
  }

  void csv_payload(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) const {
    std::string out = "# " + provenance().dump() + "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    char buf[40];
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
        out += (i ? "," : "");
        out += buf;
      }
      out += "\n";
    }
    write(out);
  }

 private:
  const Common& common_;
  std::string command_;

  void write(const std::string& text) const {
    if (common_.output.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(common_.output, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open --output " + common_.output);
    f << text;
  }
};

EvalConfig eval_config(const Common& c, double t_needed) {
  EvalConfig cfg;
  cfg.t_max = std::max(c.t_max, std::ceil(t_needed + 1.0));
  return cfg;
}

void add_target(CLI::App* sub, Target& t) {
  sub->add_option("--disc", t.disc, "Fundamental discriminant D < 0");
  sub->add_option("--form", t.form, "Form a,b,c (defaults to the principal form of --disc)");
}

void target_params(Output& out, const Target& t) {
  out.params["disc"] = resolve_disc(t);
  out.params["form"] = form_json(resolve_form(t));
}

// --- classgroup ---------------------------------------------------------------

void cmd_classgroup(const Common& c, const Target& t) {
  if (!t.disc) throw std::invalid_argument("--disc is required");
  const auto F = QuadraticField::build(*t.disc);
  Output out(c, "classgroup");
  out.params["disc"] = *t.disc;

  json r;
  r["disc"] = F.disc();
  r["h"] = F.h();
  r["w"] = F.w;
  r["J"] = F.J();
  json forms = json::array();
  for (const auto& Q : F.group.elements) forms.push_back(form_json(Q));
  r["forms"] = forms;
  json structure = json::array();
  for (const auto& [g, order] : F.group.decomposition) {
    structure.push_back(json{{"generator", form_json(F.group.elements[g])}, {"order", order}});
  }
  r["structure"] = structure;
  json chars = json::array();
  for (const auto& chi : F.table) {
    json values = json::array();
    for (const auto& v : chi.values) values.push_back(json::array({v.num(), v.den()}));
    chars.push_back(json{{"index", chi.index}, {"real", chi.is_real}, {"exponents", chi.exponents}, {"values", values}});
  }
  r["characters"] = chars;
  r["character_values"] = "exp(2 pi i num/den) per class, as [num, den]";
  json basis = json::array();
  for (const auto& chi : F.basis.chars) basis.push_back(chi.index);
  r["basis"] = basis;
  json coeffs = json::array();
  for (const auto& Q : F.group.elements) {
    coeffs.push_back(json{{"form", form_json(Q)}, {"a", coefficients(F.group, F.basis, Q).a}});
  }
  r["coefficients"] = coeffs;
  if (F.h() == 1) r["note"] = "E = w_D zeta_K with w_D = " + std::to_string(F.w);
  out.json_payload(r);
}

// --- eval ---------------------------------------------------------------------

void cmd_eval(const Common& c, const Target& t, const std::string& s_text, const std::string& method) {
  const QuadForm Q = resolve_form(t);
  const cplx s = parse_complex(s_text);
  Output out(c, "eval");
  target_params(out, t);
  out.params["s"] = cplx_json(s);
  out.params["method"] = method;
  const EvalConfig cfg = eval_config(c, std::abs(s.imag()));
  out.params["t_max"] = cfg.t_max;

  EvalResult r;
  if (method == "kernel") {
    r = EpsteinFunction(Q, cfg).eval(s, c.eps);
  } else if (method == "direct") {
    r = epstein_direct(s, Q, c.eps);
  } else if (method == "characters") {
    r = Field(Q.disc(), cfg).epstein_via_characters(Q, s, c.eps);
  } else if (method == "smoothed") {
    r = epstein_smoothed(s, Q, c.eps, cfg);
  } else {
    throw std::invalid_argument("--method must be kernel, direct, characters or smoothed");
  }
  out.json_payload(result_json(r));
}

// --- coeffs -------------------------------------------------------------------

void cmd_coeffs(const Common& c, const Target& t, const std::string& kind, int j, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("--n must be >= 1");
  Output out(c, "coeffs");
  target_params(out, t);
  out.params["kind"] = kind;
  out.params["n_max"] = N;
  out.n = N;

  CoeffTable table;
  if (kind == "epstein") {
    table = epstein_coeffs(resolve_form(t), N);
  } else if (kind == "dedekind") {
    table = dedekind_coeffs(resolve_disc(t), N);
  } else if (kind == "hecke") {
    const auto F = QuadraticField::build(resolve_disc(t));
    if (j < 0 || j >= F.J()) throw std::invalid_argument("--char out of range");
    out.params["char"] = j;
    table = hecke_coeffs(F.basis.chars[j], F.group, N);
  } else {
    throw std::invalid_argument("--kind must be epstein, hecke or dedekind");
  }

  if (out.csv(true)) {
    std::vector<std::vector<double>> rows;
    for (std::int64_t n = 1; n <= N; ++n) rows.push_back({static_cast<double>(n), table.values[n]});
    out.csv_payload({"n", "value"}, rows);
  } else {
    out.json_payload(json{{"values", std::vector<double>(table.values.begin() + 1, table.values.end())}});
  }
}

// --- zeros / count ------------------------------------------------------------

json rect_json(const Rectangle& r) {
  return json{{"sigma1", r.sigma1}, {"sigma2", r.sigma2}, {"t1", r.t1}, {"t2", r.t2}};
}

void cmd_zeros(const Common& c, const Target& t, Rectangle rect, double delta) {
  const QuadForm Q = resolve_form(t);
  Output out(c, "zeros");
  target_params(out, t);
  out.params["rectangle"] = rect_json(rect);
  out.params["delta"] = delta;
  const EvalConfig cfg = eval_config(c, std::max(std::abs(rect.t1), std::abs(rect.t2)) + 1.0);
  out.params["t_max"] = cfg.t_max;
  ZeroConfig zc;
  zc.delta = delta;
  zc.eps = c.eps;
  const EpsteinFunction E(Q, cfg);
  const ZeroList zl = locate_zeros(rect, E, zc);

  if (out.csv(true)) {
    std::vector<std::vector<double>> rows;
    for (const auto& z : zl.zeros) rows.push_back({z.beta, z.gamma, double(z.multiplicity), z.residual});
    out.csv_payload({"beta", "gamma", "multiplicity", "residual"}, rows);
  } else {
    json zs = json::array();
    for (const auto& z : zl.zeros) {
      zs.push_back(json{{"beta", z.beta}, {"gamma", z.gamma}, {"multiplicity", z.multiplicity}, {"residual", z.residual}});
    }
    out.json_payload(json{{"zeros", zs},
                          {"total_multiplicity", zl.total_multiplicity()},
                          {"unconverged", zl.unconverged},
                          {"grid_points", zl.grid_points}});
  }
}

void cmd_count(const Common& c, const Target& t, double sigma1, double sigma2, std::optional<double> T,
               std::optional<double> t1, std::optional<double> t2, double delta) {
  const QuadForm Q = resolve_form(t);
  Output out(c, "count");
  target_params(out, t);
  ZeroConfig zc;
  zc.delta = delta;
  zc.eps = c.eps;
  out.params["sigma1"] = sigma1;
  out.params["sigma2"] = sigma2;
  out.params["delta"] = delta;

  CountResult r;
  if (T) {
    if (t1 || t2) throw std::invalid_argument("give either --t or --t1/--t2");
    const EvalConfig cfg = eval_config(c, 2.0 * *T + 1.0);
    out.params["T"] = *T;
    out.params["t_max"] = cfg.t_max;
    r = count_N_E(sigma1, sigma2, *T, EpsteinFunction(Q, cfg), zc);
  } else {
    if (!t1 || !t2) throw std::invalid_argument("give --t, or both --t1 and --t2");
    const EvalConfig cfg = eval_config(c, std::max(std::abs(*t1), std::abs(*t2)) + 1.0);
    out.params["t1"] = *t1;
    out.params["t2"] = *t2;
    out.params["t_max"] = cfg.t_max;
    r = winding_count(Rectangle{sigma1, sigma2, *t1, *t2}, EpsteinFunction(Q, cfg), zc);
  }
  out.json_payload(json{{"count", r.count},
                        {"winding", r.winding},
                        {"contour", rect_json(r.contour)},
                        {"perturbation", r.perturbation},
                        {"contour_points", r.contour_points},
                        {"min_abs_on_contour", r.min_abs_on_contour}});
}

// --- model / density / moments -------------------------------------------------

struct ModelArgs {
  double sigma = 0.8;
  std::int64_t samples = 100000;
  std::int64_t P = 10000;
};

void model_params(Output& out, const ModelArgs& m) {
  out.P = m.P;
  out.n = m.samples;
  out.params["samples"] = m.samples;
  out.params["P"] = m.P;
}

ModelConfig model_config(const Common& c, const ModelArgs& m) {
  if (m.samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (m.P < 2) throw std::invalid_argument("--P must be >= 2");
  ModelConfig mc;
  mc.P = m.P;
  mc.n_samples = m.samples;
  mc.seed = c.seed;
  mc.sigma = m.sigma;
  return mc;
}

void cmd_model(const Common& c, const Target& t, const ModelArgs& m, double h, bool vectors) {
  const QuadForm Q = resolve_form(t);
  const auto F = QuadraticField::build(Q.disc());
  const ModelConfig mc = model_config(c, m);
  Output out(c, "model");
  target_params(out, t);
  model_params(out, m);
  out.params["sigma"] = m.sigma;
  const RandomModel model(F, Q, m.P);

  if (vectors) {
    if (!out.csv(true)) throw std::invalid_argument("--vectors writes CSV only");
    out.params["vectors"] = true;
    std::int64_t resampled = 0;
    const auto v = model.L_vectors(m.sigma, m.samples, c.seed, &resampled);
    std::vector<std::vector<double>> rows;
    for (const auto& x : v) {
      std::vector<double> row = x.x;
      row.push_back(x.log_abs_E);
      rows.push_back(std::move(row));
    }
    std::vector<std::string> header;
    for (int j = 0; j < model.J(); ++j) header.push_back("log_abs_L" + std::to_string(j + 1));
    for (int j = 0; j < model.J(); ++j) header.push_back("arg_L" + std::to_string(j + 1));
    header.push_back("log_abs_E");
    out.csv_payload(header, rows);
    return;
  }
  out.params["h"] = h;
  const MCEstimate M = mc_M(model, m.sigma, mc);
  const MCEstimate Mp = mc_M_prime(model, m.sigma, h, mc);
  out.json_payload(json{{"J", model.J()}, {"a", model.a()}, {"M", mc_json(M)}, {"M_prime", mc_json(Mp)}});
}

void cmd_density(const Common& c, const Target& t, double sigma1, double sigma2, ModelArgs m, double h) {
  const QuadForm Q = resolve_form(t);
  const auto F = QuadraticField::build(Q.disc());
  const ModelConfig mc = model_config(c, m);
  Output out(c, "density");
  target_params(out, t);
  model_params(out, m);
  out.params["sigma1"] = sigma1;
  out.params["sigma2"] = sigma2;
  out.params["h"] = h;
  const RandomModel model(F, Q, m.P);
  const DensityEstimate d = density_constant(model, sigma1, sigma2, mc, h);
  out.json_payload(json{{"c_E", mc_json(d.c_E)},
                        {"z_score", d.c_E.std_error > 0 ? d.c_E.mean / d.c_E.std_error : 0.0},
                        {"M_prime_sigma1", mc_json(d.M_prime_1)},
                        {"M_prime_sigma2", mc_json(d.M_prime_2)},
                        {"alpha", d.alpha},
                        {"alpha_note", "sigma1 / (4J + 2), reported as metadata only"}});
}

json moments_json(const MomentReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"k", row.k},
                        {"moment_logE", row.moment_logE},
                        {"stderr_logE", row.stderr_logE},
                        {"moment_logL", row.moment_logL},
                        {"fitted_C", row.fitted_C}});
  }
  return json{{"n", r.n}, {"rows", rows}, {"C_logE", r.C_logE}, {"C_logL", r.C_logL}};
}

void cmd_moments(const Common& c, const Target& t, const ModelArgs& m, int k_max, std::optional<double> T,
                 std::int64_t n_time) {
  const QuadForm Q = resolve_form(t);
  const auto F = QuadraticField::build(Q.disc());
  const ModelConfig mc = model_config(c, m);
  Output out(c, "moments");
  target_params(out, t);
  model_params(out, m);
  out.params["sigma"] = m.sigma;
  out.params["k_max"] = k_max;
  const RandomModel model(F, Q, m.P);
  json r;
  r["model"] = moments_json(moment_report(model, k_max, m.sigma, mc));
  if (T) {
    const EvalConfig cfg = eval_config(c, 2.0 * *T + 1.0);
    out.params["T"] = *T;
    out.params["n_time"] = n_time;
    out.params["t_max"] = cfg.t_max;
    const Field field(Q.disc(), cfg);
    const LSampler S(field, Q);
    std::int64_t moved = 0;
    const auto emp = empirical_measure(S, m.sigma, *T, n_time, c.seed, &moved);
    r["empirical"] = moments_json(moments_from_samples(k_max, m.sigma, emp));
    r["empirical"]["moved"] = moved;
  }
  out.json_payload(r);
}

// --- discrepancy / psi --------------------------------------------------------

void cmd_discrepancy(const Common& c, const Target& t, const ModelArgs& m, double T, std::int64_t n_emp,
                     int grid, bool dump) {
  const QuadForm Q = resolve_form(t);
  if (n_emp < 1) throw std::invalid_argument("--n must be >= 1");
  const EvalConfig cfg = eval_config(c, 2.0 * T + 1.0);
  Output out(c, "discrepancy");
  target_params(out, t);
  model_params(out, m);
  out.params["sigma"] = m.sigma;
  out.params["T"] = T;
  out.params["n_emp"] = n_emp;
  out.params["grid"] = grid;
  out.params["t_max"] = cfg.t_max;
  const Field field(Q.disc(), cfg);
  const LSampler S(field, Q);
  std::int64_t moved = 0;
  const auto emp = empirical_measure(S, m.sigma, T, n_emp, c.seed, &moved);

  if (dump) {
    out.params["dump"] = true;
    const int J = field.data().J();
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < emp.size(); ++i) {
      std::vector<double> row{sample_t(c.seed, static_cast<std::int64_t>(i), T)};
      row.insert(row.end(), emp[i].x.begin(), emp[i].x.end());
      row.push_back(emp[i].log_abs_E);
      rows.push_back(std::move(row));
    }
    std::vector<std::string> header{"t"};
    for (int j = 0; j < J; ++j) header.push_back("log_abs_L" + std::to_string(j + 1));
    for (int j = 0; j < J; ++j) header.push_back("arg_L" + std::to_string(j + 1));
    header.push_back("log_abs_E");
    out.csv_payload(header, rows);
    return;
  }

  const RandomModel model(field.data(), Q, m.P);
  std::int64_t resampled = 0;
  const auto mod = model.L_vectors(m.sigma, m.samples, c.seed, &resampled);
  const DiscrepancyReport d = discrepancy(emp, mod, grid, c.seed);
  out.json_payload(json{{"sup_estimate", d.sup_estimate},
                        {"grid", d.grid},
                        {"n_emp", d.n_emp},
                        {"n_model", d.n_model},
                        {"boxes_examined", d.boxes_examined},
                        {"randomized", d.randomized},
                        {"moved", moved},
                        {"model_resampled", resampled}});
}

void cmd_psi(const Common& c, const Target& t, const ModelArgs& m, double T, std::int64_t n_emp,
             std::vector<double> taus, double A) {
  const QuadForm Q = resolve_form(t);
  if (n_emp < 1) throw std::invalid_argument("--n must be >= 1");
  if (!(A > 0)) throw std::invalid_argument("--A must be positive");
  const EvalConfig cfg = eval_config(c, 2.0 * T + 1.0);
  Output out(c, "psi");
  target_params(out, t);
  model_params(out, m);
  out.params["sigma"] = m.sigma;
  out.params["T"] = T;
  out.params["n_emp"] = n_emp;
  out.params["tau"] = taus;
  out.params["A"] = A;
  out.params["t_max"] = cfg.t_max;
  const TruncationConfig trunc{A};
  const double M = trunc.M(T);
  const Field field(Q.disc(), cfg);
  const LSampler S(field, Q);
  std::int64_t moved = 0;
  const auto emp = empirical_measure(S, m.sigma, T, n_emp, c.seed, &moved);
  const RandomModel model(field.data(), Q, m.P);
  const auto mod = model.L_vectors(m.sigma, m.samples, c.seed);
  json rows = json::array();
  for (double tau : taus) {
    const double pt = psi_T(tau, T, trunc, emp);
    const double pr = psi_fraction(tau, M, mod);
    rows.push_back(json{{"tau", tau}, {"psi_T", pt}, {"psi_rand", pr}, {"diff", pt - pr}});
  }
  out.json_payload(json{{"M", M}, {"rows", rows}, {"moved", moved}});
}

// --- littlewood ---------------------------------------------------------------

void cmd_littlewood(const Common& c, const Target& t, double sigma, double T, std::optional<double> sigma0) {
  const QuadForm Q = resolve_form(t);
  const EvalConfig cfg = eval_config(c, 2.0 * T + 1.0);
  Output out(c, "littlewood");
  target_params(out, t);
  out.params["sigma"] = sigma;
  out.params["T"] = T;
  out.params["t_max"] = cfg.t_max;
  const double s0 = sigma0 ? *sigma0 : sigma0_bound(Q);
  out.params["sigma0"] = s0;
  const EpsteinFunction E(Q, cfg);
  ZeroConfig zc;
  zc.eps = c.eps;
  const LittlewoodReport r = littlewood_check(sigma, s0, T, E, zc);
  json zs = json::array();
  for (const auto& z : r.zeros) zs.push_back(json{{"beta", z.beta}, {"gamma", z.gamma}, {"multiplicity", z.multiplicity}});
  out.json_payload(json{{"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"abs_diff", r.abs_diff},
                        {"slack", r.slack},
                        {"within_slack", r.abs_diff <= r.slack},
                        {"arg_term", r.arg_term},
                        {"identity_residual", r.identity_residual},
                        {"zeros_located", r.zeros_located},
                        {"zeros_counted", r.zeros_counted},
                        {"zeros", zs}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epstein zeta functions of binary quadratic forms: values, zeros, value distribution"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", EPSTEIN_VERSION);

  Common c;
  app.add_option("--threads", c.threads, "Worker threads (default: EPSTEIN_THREADS or 1)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", c.format, "json | csv | auto")->check(CLI::IsMember({"json", "csv", "auto"}));
  app.add_option("--output", c.output, "Output file (default stdout)");
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--eps", c.eps, "Absolute error target for evaluations")->check(CLI::PositiveNumber);
  app.add_option("--t-max", c.t_max, "Height the coefficient tables are sized for (raised automatically)");

  Target tgt;
  std::function<void()> run;

  auto* classgroup = app.add_subcommand("classgroup", "Class group, characters and a_j per class");
  add_target(classgroup, tgt);
  classgroup->callback([&] { run = [&] { cmd_classgroup(c, tgt); }; });

  std::string s_text, method = "kernel";
  auto* eval = app.add_subcommand("eval", "E(s, Q)");
  add_target(eval, tgt);
  eval->add_option("--s", s_text, "re,im")->required();
  eval->add_option("--method", method, "kernel | direct | characters | smoothed");
  eval->callback([&] { run = [&] { cmd_eval(c, tgt, s_text, method); }; });

  std::string kind = "epstein";
  int char_index = 0;
  std::int64_t n_max = 100;
  auto* coeffs = app.add_subcommand("coeffs", "Dirichlet coefficients");
  add_target(coeffs, tgt);
  coeffs->add_option("--kind", kind, "epstein | hecke | dedekind");
  coeffs->add_option("--char", char_index, "Basis character index (hecke)");
  coeffs->add_option("--n", n_max, "Largest n");
  coeffs->callback([&] { run = [&] { cmd_coeffs(c, tgt, kind, char_index, n_max); }; });

  Rectangle rect{0.51, 1.4, 2.0, 60.0};
  double delta = 1e-4;
  auto* zeros = app.add_subcommand("zeros", "Zeros of E in a rectangle");
  add_target(zeros, tgt);
  zeros->add_option("--sigma1", rect.sigma1);
  zeros->add_option("--sigma2", rect.sigma2);
  zeros->add_option("--t1", rect.t1);
  zeros->add_option("--t2", rect.t2);
  zeros->add_option("--delta", delta, "Contour edge offset");
  zeros->callback([&] { run = [&] { cmd_zeros(c, tgt, rect, delta); }; });

  double sigma1 = 0.6, sigma2 = 0.9;
  std::optional<double> T_opt, t1_opt, t2_opt;
  auto* count = app.add_subcommand("count", "Argument-principle zero count");
  add_target(count, tgt);
  count->add_option("--sigma1", sigma1);
  count->add_option("--sigma2", sigma2);
  count->add_option("--t", T_opt, "Count zeros with T <= gamma <= 2T");
  count->add_option("--t1", t1_opt);
  count->add_option("--t2", t2_opt);
  count->add_option("--delta", delta, "Contour edge offset");
  count->callback([&] { run = [&] { cmd_count(c, tgt, sigma1, sigma2, T_opt, t1_opt, t2_opt, delta); }; });

  // One ModelArgs per subcommand so that defaults can differ.
  ModelArgs m_model, m_density, m_moments, m_disc{0.8, 2000, 10000}, m_psi;
  double h = 0.01;
  bool vectors = false;
  auto add_model = [&](CLI::App* sub, ModelArgs& m, bool with_sigma) {
    if (with_sigma) sub->add_option("--sigma", m.sigma);
    sub->add_option("--samples", m.samples, "Random-model samples");
    sub->add_option("--P", m.P, "Euler product cutoff");
  };
  auto* model = app.add_subcommand("model", "M(sigma) and M'(sigma) of the random model");
  add_target(model, tgt);
  add_model(model, m_model, true);
  model->add_option("--dsigma", h, "Finite-difference step for M'");
  model->add_flag("--vectors", vectors, "Write the sampled vectors as CSV");
  model->callback([&] { run = [&] { cmd_model(c, tgt, m_model, h, vectors); }; });

  auto* density = app.add_subcommand("density", "Zero-density constant c_E(sigma1, sigma2)");
  add_target(density, tgt);
  add_model(density, m_density, false);
  density->add_option("--sigma1", sigma1);
  density->add_option("--sigma2", sigma2);
  density->add_option("--dsigma", h, "Finite-difference step for M'");
  density->callback([&] { run = [&] { cmd_density(c, tgt, sigma1, sigma2, m_density, h); }; });

  int k_max = 2;
  std::int64_t n_emp = 2000;
  auto* moments = app.add_subcommand("moments", "2k-th moments of log|E| and log L_j");
  add_target(moments, tgt);
  add_model(moments, m_moments, true);
  moments->add_option("--kmax", k_max)->check(CLI::Range(0, 4));
  moments->add_option("--t", T_opt, "Also sample t in [T, 2T]");
  moments->add_option("--n", n_emp, "Number of t samples");
  moments->callback([&] { run = [&] { cmd_moments(c, tgt, m_moments, k_max, T_opt, n_emp); }; });

  double T = 100.0;
  int grid = 8;
  bool dump = false;
  auto* disc = app.add_subcommand("discrepancy", "Box discrepancy of L-vectors on [T, 2T] against the model");
  add_target(disc, tgt);
  add_model(disc, m_disc, true);
  disc->add_option("--t", T);
  disc->add_option("--n", n_emp, "Number of t samples");
  disc->add_option("--grid", grid, "Quantile cuts per axis")->check(CLI::Range(2, 64));
  disc->add_flag("--dump", dump, "Write the sampled vectors as CSV instead");
  disc->callback([&] { run = [&] { cmd_discrepancy(c, tgt, m_disc, T, n_emp, grid, dump); }; });

  std::vector<double> taus{0.0};
  double A = 2.0;
  auto* psi = app.add_subcommand("psi", "Psi_T(tau) against Psi_rand(tau)");
  add_target(psi, tgt);
  add_model(psi, m_psi, true);
  psi->add_option("--t", T);
  psi->add_option("--n", n_emp, "Number of t samples");
  psi->add_option("--tau", taus, "Thresholds")->delimiter(',');
  psi->add_option("--A", A, "Truncation constant");
  psi->callback([&] { run = [&] { cmd_psi(c, tgt, m_psi, T, n_emp, taus, A); }; });

  double lw_sigma = 0.6, lw_T = 30.0;
  std::optional<double> sigma0;
  auto* lw = app.add_subcommand("littlewood", "Littlewood lemma check on [sigma, sigma0] x [T, 2T]");
  add_target(lw, tgt);
  lw->add_option("--sigma", lw_sigma);
  lw->add_option("--t", lw_T);
  lw->add_option("--sigma0", sigma0, "Default: sigma0_bound of the form");
  lw->callback([&] { run = [&] { cmd_littlewood(c, tgt, lw_sigma, lw_T, sigma0); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c.threads > 0) set_thread_count(c.threads);
    run();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
