// Copyright 2026 The lipproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lipproj/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "lipproj/averaging.hpp"
#include "lipproj/bounds.hpp"
#include "lipproj/oracle.hpp"
#include "lipproj/polynomials.hpp"
#include "lipproj/rng.hpp"
#include "lipproj/witness.hpp"

namespace lipproj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

int ParseInt(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    Fail(ErrorCode::kParameter, "not an integer: '" + s + "'");
  }
  if (used != s.size()) Fail(ErrorCode::kParameter, "not an integer: '" + s + "'");
  return v;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string Csv12(double v) {
  std::ostringstream o;
  o.precision(12);
  o << v;
  return o.str();
}

void AddCheck(CommandReport* r, CheckRecord c) { r->checks.push_back(std::move(c)); }

CheckRecord MakeCheck(std::string name, std::string anchor, double value, double lower,
                      double upper, std::uint64_t seed = 0, std::uint64_t stream = 0,
                      int samples = 0) {
  CheckRecord c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.value = value;
  c.lower = lower;
  c.upper = upper;
  c.passed = std::isfinite(value) && value >= lower && value <= upper;
  c.seed = seed;
  c.stream = stream;
  c.samples = samples;
  return c;
}

nlohmann::json ChecksJson(const std::vector<CheckRecord>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"anchor", c.anchor},
                   {"value", c.value},
                   {"lower", c.lower},
                   {"upper", c.upper},
                   {"passed", c.passed},
                   {"seed", c.seed},
                   {"stream", c.stream},
                   {"samples", c.samples}});
  }
  return arr;
}

std::string ChecksCsv(const std::vector<CheckRecord>& checks) {
  std::ostringstream o;
  o << "check,anchor,value,lower,upper,passed,seed,stream,samples\n";
  for (const auto& c : checks) {
    o << c.name << ',' << c.anchor << ',' << Csv12(c.value) << ',' << Csv12(c.lower) << ','
      << Csv12(c.upper) << ',' << (c.passed ? "true" : "false") << ',' << c.seed << ','
      << c.stream << ',' << c.samples << '\n';
  }
  return o.str();
}

// Sets passed/failure from the check list.
void Finalize(CommandReport* r) {
  r->passed = true;
  std::ostringstream fail;
  for (const auto& c : r->checks) {
    if (c.passed) continue;
    if (!r->passed) fail << "; ";
    r->passed = false;
    fail << c.anchor << " violated (" << c.name << "): value " << Csv12(c.value)
         << " outside [" << Csv12(c.lower) << ", " << Csv12(c.upper) << "]";
  }
  r->failure = fail.str();
  std::ostringstream sum;
  for (const auto& c : r->checks) {
    sum << (c.passed ? "PASS " : "FAIL ") << c.anchor << " " << c.name << " = "
        << Csv12(c.value) << '\n';
  }
  r->summary += sum.str();
}

nlohmann::json ReportJson(const RunConfig& c, const CommandReport& r, nlohmann::json rows) {
  nlohmann::json j = {{"command", c.command},
                      {"config", ConfigToJson(c)},
                      {"passed", r.passed},
                      {"checks", ChecksJson(r.checks)}};
  if (!rows.is_null()) j["rows"] = std::move(rows);
  if (!r.passed) j["failure"] = r.failure;
  return j;
}

int SingleN(const RunConfig& c, int fallback) {
  if (c.ns.empty()) return fallback;
  if (c.ns.size() != 1) Fail(ErrorCode::kParameter, c.command + " takes a single --n");
  return c.ns.front();
}

std::vector<int> RangeOrDefault(const RunConfig& c) {
  std::vector<int> ns = c.ns;
  if (ns.empty()) {
    for (int n = 3; n <= 100; ++n) ns.push_back(n);
  }
  for (int n : ns) {
    if (n < 3) {
      Fail(ErrorCode::kParameter, "n = " + std::to_string(n) +
                                      " is invalid: the bound needs n - 2*sqrt(2) > 0, i.e. n >= 3");
    }
  }
  return ns;
}

int Samples(const RunConfig& c, int fallback) {
  const int s = c.samples.value_or(fallback);
  if (s < 1) Fail(ErrorCode::kParameter, "--samples must be positive");
  return s;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---------------------------------------------------------------- bound

CommandReport RunBound(const RunConfig& c) {
  CommandReport r;
  r.command = c.command;
  const std::vector<int> ns = RangeOrDefault(c);
  const int k = c.k.value_or(2);
  if (k < 2) Fail(ErrorCode::kParameter, "--k must be >= 2");
  const bool fixed = c.eps.has_value() || c.delta.has_value();
  const double delta = c.delta.value_or(kAutoDelta);

  const std::vector<BoundRow> rows = BoundTable(ns, k);
  std::vector<double> fixed_values;
  double worst = kInf;
  for (const BoundRow& row : rows) {
    worst = std::min(worst, (row.optimizer_bound - row.closed_form_bound) / row.closed_form_bound);
    if (fixed) {
      const double eps = c.eps.value_or(ClosedFormEpsilon(row.n));
      fixed_values.push_back(HigherOrderBound(row.n, k, eps, delta).k_lower);
    }
  }
  AddCheck(&r, MakeCheck("optimizer-dominates-closed-form", "Theorem A", worst, -1e-12, kInf));
  Finalize(&r);
  std::ostringstream head;
  head.precision(15);
  head << "C = " << BoundConstant() << '\n';
  r.summary = head.str() + r.summary;

  if (c.format == OutputFormat::kJson) {
    nlohmann::json j = BoundTableJson(rows);
    for (std::size_t i = 0; i < fixed_values.size(); ++i) j[i]["fixed_bound"] = fixed_values[i];
    nlohmann::json rep = ReportJson(c, r, std::move(j));
    rep["C"] = BoundConstant();
    r.output = rep.dump(2) + "\n";
  } else if (!fixed) {
    r.output = BoundTableCsv(rows);
  } else {
    std::istringstream in(BoundTableCsv(rows));
    std::ostringstream out;
    std::string line;
    std::getline(in, line);
    out << line << ",fixed_bound\n";
    for (std::size_t i = 0; std::getline(in, line); ++i) {
      out << line << ',' << Csv12(fixed_values[i]) << '\n';
    }
    r.output = out.str();
  }
  return r;
}

// ---------------------------------------------------------------- table

CommandReport RunTable(const RunConfig& c) {
  CommandReport r;
  r.command = c.command;
  const std::vector<int> ns = RangeOrDefault(c);
  const int kmax = c.k.value_or(10);
  if (kmax < 2) Fail(ErrorCode::kParameter, "--k must be >= 2");
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "n,k,closed_form_bound,higher_order_bound,optimizer_bound\n";
  double worst = kInf;
  for (int n : ns) {
    for (int k = 2; k <= kmax; ++k) {
      const BoundReport b = HigherOrderBound(n, k);
      worst = std::min(worst, (b.k_lower - b.closed_form_k_lower) / b.closed_form_k_lower);
      csv << n << ',' << k << ',' << Csv12(b.closed_form_k_lower) << ',' << Csv12(b.k_lower) << ','
          << Csv12(b.optimizer_k_lower) << '\n';
      rows.push_back({{"n", n},
                      {"k", k},
                      {"closed_form_bound", b.closed_form_k_lower},
                      {"higher_order_bound", b.k_lower},
                      {"optimizer_bound", b.optimizer_k_lower}});
    }
  }
  AddCheck(&r, MakeCheck("higher-order-dominates", "Theorem 4.2", worst, -1e-12, kInf));
  Finalize(&r);
  r.output = c.format == OutputFormat::kJson ? ReportJson(c, r, std::move(rows)).dump(2) + "\n"
                                             : csv.str();
  return r;
}

// ---------------------------------------------------------------- witness

constexpr std::uint64_t kWitnessDomain = 0x7769746e;
// rho is only C^1 at r = 2 eps, so a central difference straddling that
// circle errs by up to step/2 * tau; 1e-6 keeps this below 1.4e-7.
constexpr double kFdStep = 1e-6;

double MaxAbsFdPlanar(const PlanarWitness& psi, double x, double y, double h) {
  const auto g = psi.Gradient(x, y);
  const double fx = (psi(x + h, y) - psi(x - h, y)) / (2.0 * h);
  const double fy = (psi(x, y + h) - psi(x, y - h)) / (2.0 * h);
  return std::max(std::abs(fx - g[0]), std::abs(fy - g[1]));
}

double MaxAbsFd(const ScalarField& f, const Vector& grad, const Vector& x, double h) {
  double worst = 0.0;
  Vector xp = x;
  for (int i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const double up = f(xp);
    xp(i) = x(i) - h;
    const double down = f(xp);
    xp(i) = x(i);
    worst = std::max(worst, std::abs((up - down) / (2.0 * h) - grad(i)));
  }
  return worst;
}

CommandReport RunWitnessCheck(const RunConfig& c) {
  CommandReport r;
  r.command = c.command;
  const int n = SingleN(c, 8);
  const double eps = c.eps_auto ? ClosedFormEpsilon(n) : c.eps.value_or(0.3);
  const double delta = c.delta_auto ? kAutoDelta : c.delta.value_or(kPi / 100.0);
  const int samples = Samples(c, 10000);
  const WitnessParams params(n, eps, delta);
  SmoothedAngleProfile tau = BuildTau(delta);
  if (c.corrupt_tau) tau = tau.Corrupted();
  const WitnessField field(params, tau);
  const PlanarWitness& psi = field.planar();
  const std::uint64_t seed = c.seed;
  auto stream_rng = [&](std::uint64_t s) { return Rng(seed, kWitnessDomain + s); };

  {  // tau symmetric about pi/4
    double worst = 0.0;
    const int grid = 10000;
    for (int i = 0; i <= grid; ++i) {
      const double s = kPi / 4.0 * i / grid;
      worst = std::max(worst, std::abs(tau(kPi / 4.0 + s) - tau(kPi / 4.0 - s)));
    }
    AddCheck(&r, MakeCheck("tau-symmetry", "Fact 3.2", worst, 0.0, 1e-14, 0, 0, grid + 1));
  }
  {  // 0 <= tau0 - tau <= delta and tau >= 0
    double worst = 0.0;
    const int grid = 10000;
    for (int i = 0; i <= grid; ++i) {
      const double th = kPi / 2.0 * i / grid;
      const double t = tau(th), t0 = Tau0(th);
      worst = std::max({worst, t - t0, t0 - delta - t, -t});
    }
    AddCheck(&r, MakeCheck("tau-band", "Fact 3.2", worst, -kInf, 1e-14, 0, 0, grid + 1));
  }
  {  // difference quotients of tau on a fine grid
    double worst = 0.0;
    const int grid = 100000;
    double prev = tau(0.0);
    for (int i = 1; i <= grid; ++i) {
      const double th = kPi / 2.0 * i / grid;
      const double cur = tau(th);
      worst = std::max(worst, std::abs(cur - prev) / (kPi / 2.0 / grid));
      prev = cur;
    }
    AddCheck(&r, MakeCheck("tau-lipschitz", "Fact 3.2", worst, 0.0, 1.0 + 1e-9, 0, 0, grid));
  }
  {  // psi symmetric in x <-> y and under sign changes
    Rng rng = stream_rng(1);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      const Vector p = SampleBall(2, rng);
      const double v = psi(p(0), p(1));
      worst = std::max({worst, std::abs(v - psi(p(1), p(0))), std::abs(v - psi(-p(0), p(1))),
                        std::abs(v - psi(p(0), -p(1)))});
    }
    AddCheck(&r, MakeCheck("psi-symmetry", "Fact 3.2", worst, 0.0, 0.0, seed, kWitnessDomain + 1,
                           samples));
  }
  {  // psi vanishes on the strips |x| < eps and |y| < eps
    Rng rng = stream_rng(2);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double a = rng.Uniform(-eps, eps);
      const double lim = std::sqrt(1.0 - a * a);
      const double b = rng.Uniform(-lim, lim);
      worst = std::max(worst, std::abs(k % 2 ? psi(a, b) : psi(b, a)));
    }
    AddCheck(&r, MakeCheck("psi-support", "Fact 3.2", worst, 0.0, 0.0, seed, kWitnessDomain + 2,
                           samples));
  }
  {  // planar gradient vs central differences on the support
    Rng rng = stream_rng(3);
    double worst = 0.0;
    int taken = 0;
    while (taken < samples) {
      const Vector p = SampleBall(2, rng) * (1.0 - 1e-4);
      if (std::abs(p(0)) < eps || std::abs(p(1)) < eps) continue;
      worst = std::max(worst, MaxAbsFdPlanar(psi, p(0), p(1), kFdStep));
      ++taken;
    }
    AddCheck(&r, MakeCheck("psi-gradient-fd", "Fact 3.2", worst, 0.0, 1e-6, seed,
                           kWitnessDomain + 3, samples));
  }
  const ScalarField big_psi = [&](const Vector& x) { return field.Psi(x); };
  const VectorField big_grad = [&](const Vector& x) { return field.GradPsi(x); };
  const ScalarField psi_d = [&](const Vector& x) { return field.PsiD(x); };
  const VectorField psi_d_grad = [&](const Vector& x) { return field.GradPsiD(x); };
  {  // Psi and Psi_d gradients vs central differences
    Rng rng = stream_rng(4);
    double worst = 0.0;
    double naive = 0.0;
    for (int k = 0; k < samples; ++k) {
      const Vector x = (k % 2 ? SampleBall(n, rng) : SampleSupportPoint(n, eps, rng)) * 0.98;
      worst = std::max(worst, MaxAbsFd(big_psi, big_grad(x), x, kFdStep));
      worst = std::max(worst, MaxAbsFd(psi_d, psi_d_grad(x), x, kFdStep));
      if (k % 10 == 0) {
        const double ref = field.PsiNaive(x);
        naive = std::max(naive, std::abs(field.Psi(x) - ref) / std::max(1.0, std::abs(ref)));
      }
    }
    AddCheck(&r, MakeCheck("Psi-gradient-fd", "Fact 3.3", worst, 0.0, 1e-6, seed,
                           kWitnessDomain + 4, samples));
    AddCheck(&r, MakeCheck("Psi-active-set", "Fact 3.3", naive, 0.0, 1e-12, seed,
                           kWitnessDomain + 4, (samples + 9) / 10));
  }
  auto lip = [&](const ScalarField& f, const VectorField& g, int dim, std::uint64_t stream,
                 const char* name, const char* anchor, double bound) {
    LipSamplerConfig cfg;
    cfg.seed = seed ^ (stream * 0x9E3779B97F4A7C15ULL);
    cfg.ball_samples = cfg.sphere_samples = cfg.shell_samples = samples;
    cfg.shell_eps = eps;
    double value = kInf;
    try {
      value = EstimateLip(f, g, dim, cfg).lower_bound;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCheckFailed) throw;
      r.summary += std::string("note: ") + e.what() + '\n';
    }
    AddCheck(&r, MakeCheck(name, anchor, value, 0.0, bound, seed, kWitnessDomain + stream, 3 * samples));
  };
  const ScalarField planar = [&](const Vector& x) { return psi(x(0), x(1)); };
  const VectorField planar_grad = [&](const Vector& x) {
    const auto g = psi.Gradient(x(0), x(1));
    Vector v(2);
    v << g[0], g[1];
    return v;
  };
  lip(planar, planar_grad, 2, 5, "psi-lipschitz", "Fact 3.2", 2.0);
  const double budget = 1.0 / std::pow(eps, 4);
  lip(big_psi, big_grad, n, 6, "Psi-lipschitz", "Fact 3.3", budget);
  lip(psi_d, psi_d_grad, n, 7, "PsiD-lipschitz", "Fact 3.3", budget);

  Finalize(&r);
  r.output = c.format == OutputFormat::kJson ? ReportJson(c, r, nullptr).dump(2) + "\n"
                                             : ChecksCsv(r.checks);
  return r;
}

// ---------------------------------------------------------------- average

constexpr std::uint64_t kAverageDomain = 0x61766724;

Vector PlanarTestPoint(int n, Rng& rng) {
  const double radius = rng.Uniform();
  const double phi = rng.Uniform(0.0, 2.0 * kPi);
  Vector x = Vector::Zero(n);
  x(0) = radius * std::cos(phi);
  x(1) = radius * std::sin(phi);
  return x;
}

CommandReport RunAverageCheck(const RunConfig& c) {
  CommandReport r;
  r.command = c.command;
  const int n = SingleN(c, 6);
  const double eps = c.eps_auto ? ClosedFormEpsilon(n) : c.eps.value_or(0.1);
  const double delta = c.delta_auto ? kAutoDelta : c.delta.value_or(kPi / 100.0);
  const int m = Samples(c, 100000);
  const WitnessParams params(n, eps, delta);
  const WitnessField field(params);
  const std::uint64_t seed = c.seed;
  auto stream_rng = [&](std::uint64_t s) { return Rng(seed, kAverageDomain + s); };

  const EtaEstimate eta_est = ComputeEta(field.planar().tau());
  const double eta = eta_est.value;
  AddCheck(&r, MakeCheck("eta-band", "Eq. (3.8)", eta, kPi / 72.0 - delta, kPi / 72.0));
  const double tent = ComputeEta(SmoothedAngleProfile::Tent()).value;
  AddCheck(&r, MakeCheck("eta-tent-quadrature", "Eq. (3.8)", std::abs(tent - kPi / 72.0), 0.0,
                         1e-14));

  const ScalarField psi12 = [&](const Vector& x) { return field.PsiIJ(x, 1, 2); };
  auto error_at = [&](int samples, std::uint64_t s, Rng& points, double* z) {
    const Vector x = PlanarTestPoint(n, points);
    const AveragedValue v =
        AveragedFunction(psi12, n, AveragingGroup::kPlaneRotation, samples, s)(x);
    const double diff = v.mean - So2AveragePsiClosed(x, params, eta);
    if (z) *z = v.standard_error > 0.0 ? std::abs(diff) / v.standard_error : (diff == 0 ? 0 : kInf);
    return diff;
  };
  {  // MC average against the closed form
    Rng points = stream_rng(1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double z = 0.0;
      error_at(m, Rng(seed, kAverageDomain + 100 + i).Bits(), points, &z);
      worst = std::max(worst, z);
    }
    AddCheck(&r, MakeCheck("so2-average-standard-errors", "Claim 3.5", worst, 0.0, 3.0, seed,
                           kAverageDomain + 1, m));
  }
  {  // error decay slope
    const std::vector<int> sizes = {std::max(10, m / 100), std::max(100, m / 10), std::max(1000, m)};
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      Rng points = stream_rng(2 + j);
      double ss = 0.0;
      int count = 0;
      for (int i = 0; i < 1000; ++i) {
        const double e = error_at(sizes[j], Rng(seed, kAverageDomain + 10000 * (j + 1) + i).Bits(),
                                  points, nullptr);
        ss += e * e;
        ++count;
      }
      lx.push_back(std::log(static_cast<double>(sizes[j])));
      ly.push_back(0.5 * std::log(ss / count));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int j = 0; j < 3; ++j) {
      sxy += (lx[j] - mx) * (ly[j] - my);
      sxx += (lx[j] - mx) * (lx[j] - mx);
    }
    AddCheck(&r, MakeCheck("so2-error-slope", "Claim 3.5", sxy / sxx, -0.55, -0.45, seed,
                           kAverageDomain + 2, 1000));
  }
  {  // Lip(eta N2 - averaged psi) <= 4 eps eta
    Rng rng = stream_rng(5);
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
      const Vector x = k % 2 ? SampleBall(n, rng) : PlanarTestPoint(n, rng);
      worst = std::max(worst, EtaN2MinusAverageGradient(x, params, eta).norm());
    }
    const double bound = 4.0 * eps * eta;
    AddCheck(&r, MakeCheck("eta-n2-minus-average-lipschitz", "Claim 3.5", worst, 0.0,
                           bound * (1.0 + 1e-12), seed, kAverageDomain + 5, m));
  }
  {  // (alpha, beta) structure residual decays like m^(-1/2)
    Rng setup = stream_rng(6);
    std::vector<Vector> pts;
    std::vector<Matrix> mats;
    for (int k = 0; k < 4; ++k) {
      pts.push_back(SampleSupportPoint(n, eps, setup));
      Matrix a(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = setup.Normal();
      }
      mats.push_back(a + a.transpose());
    }
    const WitnessMap map = [&](const RotatedWitness& w) {
      Matrix acc = Matrix::Zero(n, n);
      for (std::size_t k = 0; k < pts.size(); ++k) acc += w(pts[k]) * mats[k];
      return Quadratic(acc);
    };
    const int base = std::max(100, m / 200);
    std::vector<double> ratios;
    for (int s = 0; s < 20; ++s) {
      const std::uint64_t s1 = Rng(seed, kAverageDomain + 200 + s).Bits();
      const std::uint64_t s2 = Rng(seed, kAverageDomain + 300 + s).Bits();
      const double r1 = ExtractAlphaBeta(SymmetrizeMapOnWitness(map, field, base, s1)).residual;
      const double r4 = ExtractAlphaBeta(SymmetrizeMapOnWitness(map, field, 4 * base, s2)).residual;
      ratios.push_back(r4 > 0.0 ? r1 / r4 : kInf);
    }
    AddCheck(&r, MakeCheck("alpha-beta-residual-decay", "Eq. (3.1)", Median(ratios), 1.6, 2.6,
                           seed, kAverageDomain + 6, base));
  }
  Finalize(&r);
  std::ostringstream head;
  head.precision(17);
  head << "eta = " << eta << '\n';
  r.summary = head.str() + r.summary;
  if (c.format == OutputFormat::kJson) {
    nlohmann::json j = ReportJson(c, r, nullptr);
    j["eta"] = eta;
    r.output = j.dump(2) + "\n";
  } else {
    r.output = ChecksCsv(r.checks);
  }
  return r;
}

// ---------------------------------------------------------------- oracle

CommandReport RunOracle(const RunConfig& c) {
  CommandReport r;
  r.command = c.command;
  const int n = SingleN(c, 1);
  if (n < 1) Fail(ErrorCode::kInvalidDimension, "oracle: n must be >= 1");
  const std::vector<int> resolutions =
      c.resolutions.empty() ? std::vector<int>{4, 8, 16} : c.resolutions;
  if (c.restarts < 1) Fail(ErrorCode::kParameter, "--restarts must be >= 1");
  const NetScheme scheme = ParseNetScheme(c.scheme);

  std::vector<Quadratic> monomials;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Matrix a = Matrix::Zero(n, n);
      a(i, j) += 0.5;
      a(j, i) += 0.5;
      monomials.emplace_back(a);
    }
  }

  std::ostringstream csv;
  csv << "n,scheme,resolution,points,subspace_dim,norm,lower_bound,restarts,iterations";
  if (c.timing) csv << ",wall_time_s";
  csv << '\n';
  nlohmann::json rows = nlohmann::json::array();
  double lo = kInf, hi = 0.0;
  for (int res : resolutions) {
    const auto start = std::chrono::steady_clock::now();
    const NetPtr net = BuildNet(n, res, scheme, c.seed);
    const Matrix basis = RestrictedBasis(monomials, *net);
    const MinimizedProjection best = MinimizeProjectionNorm(net, basis, c.restarts, c.seed);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    lo = std::min(lo, best.norm);
    hi = std::max(hi, best.norm);
    csv << n << ',' << NetSchemeName(scheme) << ',' << res << ',' << net->size() << ','
        << basis.cols() << ',' << Csv12(best.norm) << ',' << Csv12(best.lower_bound) << ','
        << c.restarts << ',' << best.iterations;
    if (c.timing) csv << ',' << Csv12(secs);
    csv << '\n';
    nlohmann::json row = {{"n", n},
                          {"scheme", NetSchemeName(scheme)},
                          {"resolution", res},
                          {"points", net->size()},
                          {"subspace_dim", basis.cols()},
                          {"norm", best.norm},
                          {"lower_bound", best.lower_bound},
                          {"restarts", c.restarts},
                          {"restart_norms", best.restart_norms},
                          {"iterations", best.iterations}};
    if (c.timing) row["wall_time_s"] = secs;
    rows.push_back(std::move(row));
  }
  AddCheck(&r, MakeCheck("projection-norm-at-least-one", "projection lower bound", lo,
                         1.0 - 1e-12, kInf, c.seed));
  AddCheck(&r, MakeCheck("cross-resolution-stability", "oracle stability", (hi - lo) / lo, 0.0,
                         0.05, c.seed));
  Finalize(&r);
  r.output = c.format == OutputFormat::kJson ? ReportJson(c, r, std::move(rows)).dump(2) + "\n"
                                             : csv.str();
  return r;
}

}  // namespace

std::vector<int> ParseIntList(const std::string& text) {
  const std::string t = Trim(text);
  if (t.empty()) Fail(ErrorCode::kParameter, "empty integer list");
  std::vector<int> out;
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const int a = ParseInt(Trim(t.substr(0, dots)));
    const int b = ParseInt(Trim(t.substr(dots + 2)));
    if (b < a) Fail(ErrorCode::kParameter, "empty range '" + t + "'");
    if (static_cast<long long>(b) - a > 1000000) Fail(ErrorCode::kResource, "range too long");
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::istringstream in(t);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(ParseInt(Trim(item)));
  return out;
}

RunConfig ConfigFromJson(const nlohmann::json& j, RunConfig base) {
  if (!j.is_object()) Fail(ErrorCode::kParse, "config must be a JSON object");
  static const char* kKnown[] = {"command", "n",       "k",         "eps",         "delta",
                                 "seed",    "samples", "out",       "format",      "corrupt_tau",
                                 "resolutions", "scheme", "restarts", "timing"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown),
                     [&](const char* k) { return item.key() == k; }) == std::end(kKnown)) {
      Fail(ErrorCode::kParse, "unknown config key '" + item.key() + "'");
    }
  }
  auto int_list = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return std::vector<int>{v.get<int>()};
    if (v.is_string()) return ParseIntList(v.get<std::string>());
    if (v.is_array()) return v.get<std::vector<int>>();
    Fail(ErrorCode::kParse, "expected an integer, list or range string");
  };
  try {
    if (j.contains("command")) base.command = j["command"].get<std::string>();
    if (j.contains("n")) base.ns = int_list(j["n"]);
    if (j.contains("k")) base.k = j["k"].get<int>();
    if (j.contains("eps")) {
      if (j["eps"].is_string() && j["eps"] == "auto") {
        base.eps.reset();
        base.eps_auto = true;
      } else {
        base.eps = j["eps"].get<double>();
        base.eps_auto = false;
      }
    }
    if (j.contains("delta")) {
      if (j["delta"].is_string() && j["delta"] == "auto") {
        base.delta.reset();
        base.delta_auto = true;
      } else {
        base.delta = j["delta"].get<double>();
        base.delta_auto = false;
      }
    }
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) base.samples = j["samples"].get<int>();
    if (j.contains("out")) base.out = j["out"].get<std::string>();
    if (j.contains("format")) {
      const std::string f = j["format"].get<std::string>();
      if (f == "csv") {
        base.format = OutputFormat::kCsv;
      } else if (f == "json") {
        base.format = OutputFormat::kJson;
      } else {
        Fail(ErrorCode::kParse, "format must be csv or json");
      }
    }
    if (j.contains("corrupt_tau")) base.corrupt_tau = j["corrupt_tau"].get<bool>();
    if (j.contains("resolutions")) base.resolutions = int_list(j["resolutions"]);
    if (j.contains("scheme")) base.scheme = j["scheme"].get<std::string>();
    if (j.contains("restarts")) base.restarts = j["restarts"].get<int>();
    if (j.contains("timing")) base.timing = j["timing"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  return base;
}

nlohmann::json ConfigToJson(const RunConfig& c) {
  nlohmann::json j = {{"command", c.command}, {"seed", c.seed},
                      {"format", c.format == OutputFormat::kJson ? "json" : "csv"}};
  if (!c.ns.empty()) j["n"] = c.ns;
  if (c.k) j["k"] = *c.k;
  if (c.eps_auto) {
    j["eps"] = "auto";
  } else if (c.eps) {
    j["eps"] = *c.eps;
  }
  if (c.delta_auto) {
    j["delta"] = "auto";
  } else if (c.delta) {
    j["delta"] = *c.delta;
  }
  if (c.samples) j["samples"] = *c.samples;
  if (c.corrupt_tau) j["corrupt_tau"] = true;
  if (c.command == "oracle") {
    j["resolutions"] = c.resolutions.empty() ? std::vector<int>{4, 8, 16} : c.resolutions;
    j["scheme"] = c.scheme;
    j["restarts"] = c.restarts;
    if (c.timing) j["timing"] = true;
  }
  return j;
}

CommandReport RunCommand(const RunConfig& config) {
  if (config.command == "bound") return RunBound(config);
  if (config.command == "table") return RunTable(config);
  if (config.command == "witness-check") return RunWitnessCheck(config);
  if (config.command == "average-check") return RunAverageCheck(config);
  if (config.command == "oracle") return RunOracle(config);
  Fail(ErrorCode::kParameter, "unknown command '" + config.command + "'");
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kResource:
      return 3;
    case ErrorCode::kCheckFailed:
    case ErrorCode::kContract:
      return 1;
    default:
      return 2;
  }
}

}  // namespace lipproj
