#include "eitlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "eitlab/errors.hpp"
#include "eitlab/steady_state.hpp"
#include "eitlab/version.hpp"

namespace eitlab {

namespace {

using nlohmann::json;

constexpr double kRhsTolerance = 1e-10;
constexpr double kBlockTolerance = 1e-10;
constexpr double kChiTolerance = 1e-6;
constexpr double kObservable = 1e-12;  // below this an entry cannot carry a ratio
constexpr int kRandomTriples = 200;

// Fixed generic point for the block comparison: all tabulated channel families on,
// both fields complex, nonzero detunings.
LambdaParams probe_params() {
  LambdaParams p = LambdaParams::from_detunings(0.13, -0.21, std::polar(0.3, 0.4), std::polar(0.5, -0.7));
  return p;
}
ChannelRates probe_rates() {
  ChannelRates r;
  r.eta_z = 0.07;
  r.eta_depol = 0.09;
  r.eta_bc = 0.11;
  r.eta_cb = 0.04;
  return r;
}

const ErratumEntry* find_entry(const std::vector<ErratumEntry>& ledger, const std::string& id) {
  for (const auto& e : ledger) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool excusable_section(const std::string& section) {
  return std::any_of(std::begin(kErrataSections), std::end(kErrataSections),
                     [&](const char* s) { return section == s; });
}

VerifyCheck tolerance_check(std::string name, double measured, double tol, std::string note = {}) {
  VerifyCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tol;
  c.status = (std::isfinite(measured) && measured <= tol) ? CheckStatus::Pass : CheckStatus::Fail;
  c.note = std::move(note);
  return c;
}

// tabulated vs oracle for one quantity that may carry a documented factor.
VerifyCheck ratio_check(std::string name, double tabulated, double oracle, const std::string& id,
                        const std::vector<ErratumEntry>& ledger) {
  VerifyCheck c;
  c.name = std::move(name);
  c.erratum_id = id;
  const double diff = std::abs(tabulated - oracle);
  if (std::abs(oracle) < kObservable) {
    c.measured = diff;
    c.tolerance = kBlockTolerance;
    c.status = diff <= kBlockTolerance ? CheckStatus::Pass : CheckStatus::Fail;
    c.note = "oracle value vanishes; absolute difference reported";
    return c;
  }
  const double ratio = tabulated / oracle;
  c.measured = ratio;
  if (diff <= kBlockTolerance) {
    c.tolerance = kBlockTolerance;
    c.status = CheckStatus::Pass;
    c.note = "agrees with oracle";
    if (find_entry(ledger, id)) c.note += "; ledger entry not observed here";
    return c;
  }
  const ErratumEntry* e = find_entry(ledger, id);
  if (!e) {
    c.status = CheckStatus::Fail;
    c.note = "deviation not in errata ledger";
    return c;
  }
  c.tolerance = e->tolerance;
  if (!excusable_section(e->section)) {
    c.status = CheckStatus::Fail;
    c.note = "ledger entry outside the excusable modules";
  } else if (std::abs(ratio - e->expected_ratio) <= e->tolerance) {
    c.status = CheckStatus::KnownErratum;
    c.note = e->equation + ": " + e->description;
  } else {
    c.status = CheckStatus::Fail;
    c.note = "ratio differs from ledger value " + std::to_string(e->expected_ratio);
  }
  return c;
}

double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ChannelRates full_rates(const ScenarioConfig& config) {
  if (!config.rates.all_zero()) return config.rates;
  const double e = config.channel_rate > 0.0 ? config.channel_rate : 0.1;
  ChannelRates r;
  r.eta_x = r.eta_y = r.eta_z = r.eta_depol = r.eta_bc = r.eta_cb = e;
  return r;
}

LambdaParams config_params(const ScenarioConfig& config) {
  return config.lambda_params(config.delta, config.omega_c);
}

// Section 1 -------------------------------------------------------------------

VerifySection rhs_section(const ScenarioConfig& config, const std::vector<ErratumEntry>& ledger) {
  VerifySection sec{"vector-form RHS vs superoperator", {}};
  const Su3& s = su3();

  const LambdaParams p = config_params(config);
  const ChannelRates r = full_rates(config);
  const auto channels = standard_channels(p, r);
  const RVector omega = omega_vector(p);
  const EvolutionModel model = assemble(omega, channels, s.sc);
  const HamiltonianDecomposition h = decompose_hamiltonian(lambda_hamiltonian(p), s.basis);
  const EvolutionModel oracle = superoperator_model(h, channels, s.basis);
  sec.checks.push_back(tolerance_check("config parameters: M", max_abs(model.m - oracle.m), kRhsTolerance));
  sec.checks.push_back(tolerance_check("config parameters: b", max_abs(model.b - oracle.b), kRhsTolerance));
  sec.checks.push_back(tolerance_check("omega vector vs Hamiltonian decomposition", max_abs(omega - h.omega),
                                       kRhsTolerance));

  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  double worst = 0.0;
  for (int trial = 0; trial < kRandomTriples; ++trial) {
    HamiltonianDecomposition hr{gauss(rng), RVector(8)};
    for (int i = 0; i < 8; ++i) hr.omega(i) = gauss(rng);
    std::vector<LindbladChannel> ch;
    const int nch = count(rng);
    for (int k = 0; k < nch; ++k) {
      CVector g(8);
      for (int i = 0; i < 8; ++i) g(i) = cplx(gauss(rng), gauss(rng)) * 0.5;
      ch.push_back({"random", g});
    }
    CMatrix a(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
    }
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    const CoherenceVector x = to_coherence(rho, s.basis);
    const EvolutionModel mr = assemble(hr.omega, ch, s.sc);
    const RVector lhs = rhs(x, mr);
    const RVector ref = project_hermitian(liouvillian_direct(rho, hr, ch, s.basis), s.basis);
    worst = std::max(worst, (lhs - ref).cwiseAbs().maxCoeff());
  }
  sec.checks.push_back(tolerance_check("random (omega, channels, rho) triples", worst, kRhsTolerance,
                                       std::to_string(kRandomTriples) + " triples, complex channel vectors"));

  // Inhomogeneous term as a bare component contraction, on the b decay channel.
  const LindbladChannel& decay = channels.front();
  const CVector printed = b_component_contraction(decay, s.sc);
  const RVector exact = channel_generators(decay, s.sc).b;
  int k = 0;
  for (int i = 1; i < exact.size(); ++i) {
    if (std::abs(exact(i)) > std::abs(exact(k))) k = i;
  }
  VerifyCheck c = ratio_check("b from component contraction, Im part / oracle", printed(k).imag(), exact(k),
                              "b-row-contraction", ledger);
  const double re_part = printed.real().cwiseAbs().maxCoeff();
  if (re_part > kBlockTolerance) {
    c.status = CheckStatus::Fail;
    c.note = "component contraction has a real part";
  }
  sec.checks.push_back(c);
  return sec;
}

// Section 2 -------------------------------------------------------------------

// The tabulated blocks have no anisotropic x/y dephasing terms.
ChannelRates tabulated_domain(ChannelRates r) {
  r.eta_x = r.eta_y = 0.0;
  return r;
}

void compare_at(VerifySection& sec, const std::string& label, const LambdaParams& p, const ChannelRates& r,
                const std::vector<ErratumEntry>& ledger) {
  const AnalyticBlocks tab = analytic_blocks(p, r);
  const EvolutionModel model = lambda_model(p, r);
  const BlockDiscrepancy d = compare_blocks(tab, model);

  RMatrix a = d.a;
  a(2, 3) = 0.0;
  sec.checks.push_back(tolerance_check(label + ": A (without the x3-x8 entry)", max_abs(a), kBlockTolerance));
  sec.checks.push_back(tolerance_check(label + ": B", max_abs(d.b), kBlockTolerance));
  sec.checks.push_back(
      tolerance_check(label + ": C and -C^T", std::max(max_abs(d.c), max_abs(d.minus_ct)), kBlockTolerance));
  sec.checks.push_back(tolerance_check(label + ": b'", max_abs(d.b_prime), kBlockTolerance));
  const double oracle_a34 = tab.a(2, 3) + d.a(2, 3);
  sec.checks.push_back(
      ratio_check(label + ": A x3-x8 entry, tabulated / oracle", tab.a(2, 3), oracle_a34, "block-a-eta-minus", ledger));

  const RVector w_tab = omega_vector_tabulated(p);
  const RVector w = omega_vector(p);
  sec.checks.push_back(ratio_check(label + ": omega_8, tabulated / decomposition", w_tab(7), w(7),
                                   "omega8-sign", ledger));
}

VerifySection block_section(const ScenarioConfig& config, const std::vector<ErratumEntry>& ledger) {
  VerifySection sec{"tabulated blocks A/B/C/b' vs oracle", {}};
  LambdaParams pc = config_params(config);
  compare_at(sec, "config", pc, tabulated_domain(full_rates(config)), ledger);
  compare_at(sec, "generic point", probe_params(), probe_rates(), ledger);

  // Decay term status: printed channel normalization, decay only.
  const LambdaParams p = probe_params();
  const AnalyticBlocks tab = analytic_blocks(p, {});
  const EvolutionModel printed_norm = lambda_model(p, {}, DecayNormalization::AsPrinted);
  const RMatrix t = transform_T();
  const RMatrix mt = t * printed_norm.m * t.transpose();
  const RVector bt = t * printed_norm.b;
  sec.checks.push_back(ratio_check("printed decay normalization: b' e4 coefficient, tabulated / oracle",
                                   tab.b_prime(3), bt(3), "bprime-decay-term", ledger));
  sec.checks.push_back(ratio_check("printed decay normalization: A x8-x8 entry, tabulated / oracle", tab.a(3, 3),
                                   mt(3, 3), "decay-rate-entries", ledger));
  sec.checks.push_back(ratio_check("printed decay normalization: Re Gamma_b, tabulated / oracle", tab.b(0, 0),
                                   mt(4, 4), "decay-rate-entries", ledger));

  // Branching ratio: the tabulated forms depend only on gamma_b + gamma_c.
  {
    VerifyCheck c;
    c.name = "chi sensitivity to gamma_b:gamma_c = 1:4 (max relative change)";
    c.status = CheckStatus::Info;
    double worst = 0.0;
    std::string worst_kind;
    for (ChannelKind kind : {ChannelKind::Dephase, ChannelKind::DampBc, ChannelKind::DampCb, ChannelKind::Popex,
                             ChannelKind::Depol}) {
      const ChannelRates r = rates_for_kind(kind, 0.1);
      LambdaParams even = LambdaParams::from_detunings(0.03, 0.1, 1.6e-5, 0.16);
      LambdaParams skew = even;
      skew.gamma_b = 0.2;
      skew.gamma_c = 0.8;
      const cplx a = susceptibility_numeric(even, r);
      const cplx b = susceptibility_numeric(skew, r);
      const double rel = std::abs(a - b) / std::abs(a);
      if (rel > worst) {
        worst = rel;
        worst_kind = std::string(to_string(kind));
      }
    }
    c.measured = worst;
    c.note = "largest for " + worst_kind + "; closed forms assume gamma_b = gamma_c";
    sec.checks.push_back(c);
  }
  return sec;
}

// Section 3 -------------------------------------------------------------------

ChannelRates closed_form_rates(const ScenarioConfig& config, ChannelKind kind) {
  if (kind == ChannelKind::General) {
    if (!config.rates.all_zero() && config.rates.eta_x == 0.0 && config.rates.eta_y == 0.0) return config.rates;
    ChannelRates r;
    r.eta_z = 0.05;
    r.eta_depol = 0.06;
    r.eta_bc = 0.03;
    r.eta_cb = 0.02;
    return r;
  }
  const double e = config.channel_rate > 0.0 ? config.channel_rate : 0.1;
  return rates_for_kind(kind, e);
}

VerifySection chi_section(const ScenarioConfig& config) {
  VerifySection sec{"closed-form chi vs steady state (20-point grid)", {}};
  static constexpr double deltas[] = {-0.3, -0.1, 0.0, 0.07, 0.25};
  static constexpr double means[] = {-0.2, 0.0, 0.1, 0.35};
  for (ChannelKind kind : kAllKinds) {
    const ChannelRates r = closed_form_rates(config, kind);
    std::vector<cplx> cf, num;
    for (double dl : deltas) {
      for (double md : means) {
        LambdaParams p = LambdaParams::from_detunings(dl, md, std::polar(config.probe_ratio * config.omega_c, config.phi_b),
                                                      std::polar(config.omega_c, config.phi_c));
        p.gamma_b = config.gamma_b;
        p.gamma_c = config.gamma_c;
        cf.push_back(chi_closed_form(kind, dl, md, p, r, config.kappa));
        num.push_back(susceptibility_numeric(p, r, config.kappa));
      }
    }
    double scale = 0.0;
    for (cplx v : num) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < cf.size(); ++i) {
      const double den = std::max(std::abs(num[i]), 1e-3 * scale);
      worst = std::max(worst, std::abs(cf[i] - num[i]) / den);
    }
    sec.checks.push_back(tolerance_check(std::string(to_string(kind)), worst, kChiTolerance,
                                         "relative error, denominator floored at 1e-3 max|chi|"));
  }
  return sec;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<ErratumEntry> parse_errata(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed errata ledger: ") + e.what());
  }
  const json& list = j.is_object() && j.contains("errata") ? j.at("errata") : j;
  if (!list.is_array()) throw Error(ErrorKind::Config, "errata ledger must hold an array of entries");
  std::vector<ErratumEntry> out;
  for (const auto& item : list) {
    try {
      ErratumEntry e;
      e.id = item.at("id").get<std::string>();
      e.equation = item.at("equation").get<std::string>();
      e.section = item.at("section").get<std::string>();
      e.description = item.value("description", "");
      e.expected_ratio = item.at("expected_ratio").get<double>();
      e.tolerance = item.value("tolerance", 1e-6);
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw Error(ErrorKind::Config, std::string("bad errata entry: ") + ex.what());
    }
  }
  return out;
}

std::vector<ErratumEntry> load_errata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read errata ledger " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_errata(ss.str());
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::KnownErratum: return "known-erratum";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Info: return "info";
  }
  return "?";
}

bool VerifyReport::success() const { return failures().empty(); }

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& s : sections) {
    for (const auto& c : s.checks) {
      if (c.status == CheckStatus::Fail) out.push_back(s.title + " / " + c.name);
    }
  }
  return out;
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  out << "eitlab " << kVersion << " verification report\n";
  int n = 0;
  for (const auto& s : sections) {
    out << "\n(" << ++n << ") " << s.title << '\n';
    for (const auto& c : s.checks) {
      out << "  [" << to_string(c.status) << "] " << c.name << ": " << fmt(c.measured);
      if (c.status != CheckStatus::Info && c.tolerance > 0.0) out << " (tol " << fmt(c.tolerance) << ')';
      if (!c.erratum_id.empty() && c.status == CheckStatus::KnownErratum) out << " {" << c.erratum_id << '}';
      if (!c.note.empty()) out << "  -- " << c.note;
      out << '\n';
    }
  }
  const auto fails = failures();
  out << "\nresult: " << (fails.empty() ? "PASS" : "FAIL") << " (" << fails.size() << " unexcused)\n";
  return out.str();
}

std::string VerifyReport::json() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["success"] = success();
  j["sections"] = nlohmann::json::array();
  for (const auto& s : sections) {
    nlohmann::json js;
    js["title"] = s.title;
    js["checks"] = nlohmann::json::array();
    for (const auto& c : s.checks) {
      nlohmann::json jc;
      jc["name"] = c.name;
      jc["measured"] = c.measured;
      jc["tolerance"] = c.tolerance;
      jc["status"] = std::string(to_string(c.status));
      if (!c.erratum_id.empty()) jc["erratum_id"] = c.erratum_id;
      if (!c.note.empty()) jc["note"] = c.note;
      js["checks"].push_back(jc);
    }
    j["sections"].push_back(js);
  }
  return j.dump(2);
}

VerifyReport run_verify(const ScenarioConfig& config, const std::vector<ErratumEntry>& ledger) {
  VerifyReport report;
  report.sections.push_back(rhs_section(config, ledger));
  report.sections.push_back(block_section(config, ledger));
  report.sections.push_back(chi_section(config));

  VerifySection scope{"errata ledger scope", {}};
  for (const auto& e : ledger) {
    VerifyCheck c;
    c.name = e.id + " (" + e.equation + ")";
    c.erratum_id = e.id;
    c.measured = e.expected_ratio;
    c.status = excusable_section(e.section) ? CheckStatus::Pass : CheckStatus::Fail;
    c.note = "module " + e.section;
    scope.checks.push_back(c);
  }
  report.sections.push_back(scope);
  return report;
}

}  // namespace eitlab
