// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/modes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bbspectra {

double laplace_beltrami_eigenvalue(int N, int ell) {
  if (ell < 0) throw std::invalid_argument("laplace_beltrami_eigenvalue: ell must be >= 0");
  return static_cast<double>(ell) * (ell + N - 2);
}

namespace {

struct State {
  double g, dg;
};

// RK4 step for g'' + (N-1)/r g' + c(r) g = 0 with c(r) = lam*m - sigma/r^2,
// m constant on the step (steps never straddle r0).
template <typename Coef>
State rk4_step(int N, const Coef& c, double r, State s, double h) {
  auto f = [&](double rr, const State& y) {
    return State{y.dg, -c(rr) * y.g - (N - 1) / rr * y.dg};
  };
  const State k1 = f(r, s);
  const State k2 = f(r + 0.5 * h, {s.g + 0.5 * h * k1.g, s.dg + 0.5 * h * k1.dg});
  const State k3 = f(r + 0.5 * h, {s.g + 0.5 * h * k2.g, s.dg + 0.5 * h * k2.dg});
  const State k4 = f(r + h, {s.g + h * k3.g, s.dg + h * k3.dg});
  return {s.g + h / 6.0 * (k1.g + 2 * k2.g + 2 * k3.g + k4.g),
          s.dg + h / 6.0 * (k1.dg + 2 * k2.dg + 2 * k3.dg + k4.dg)};
}

double simpson(const std::vector<double>& f, std::size_t first, std::size_t last, double h) {
  double s = f[first] + f[last];
  for (std::size_t i = first + 1; i < last; ++i) s += f[i] * ((i - first) % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

const ModeEntry& ModeTable::at_degree(int ell) const {
  for (const auto& e : entries)
    if (e.ell == ell) return e;
  throw std::invalid_argument("ModeTable: degree not solved");
}

ModeEntry solve_mode(const RadialProfile& profile, double sigma, int ell) {
  if (profile.norm_tag != Normalization::WeightedMass)
    throw std::invalid_argument("solve_mode: profile must carry the weighted normalization");
  const int N = profile.dim;
  const double lam = profile.lambda0;
  const double j = lam * (profile.mbar + profile.munder) * profile.w_r0();
  const std::size_t i_r0 = profile.i_r0;
  const std::size_t total = profile.r.size();
  const double h_in = profile.r[1] - profile.r[0];
  const double h_out = profile.r[i_r0 + 1] - profile.r[i_r0];
  const double r0 = profile.r0;
  const double R = profile.R;

  ModeEntry entry;
  entry.ell = ell;
  entry.sigma = sigma;
  entry.g.resize(total);
  entry.dg.resize(total);

  // Inner regular leg ~ r^ell, series-started.
  std::vector<double> gi(i_r0 + 1), dgi(i_r0 + 1);
  {
    const double cin = lam * profile.mbar;
    const double b = -cin / (2.0 * (2.0 * ell + N));
    auto coef = [&](double r) { return cin - sigma / (r * r); };
    const std::size_t n_series = std::min<std::size_t>(10, i_r0);
    State s{};
    for (std::size_t i = 0; i <= i_r0; ++i) {
      const double r = i * h_in;
      if (i <= n_series) {
        const double rl = std::pow(r, ell);
        s.g = rl * (1.0 + b * r * r);
        s.dg = (r == 0.0) ? (ell == 1 ? 1.0 : 0.0)
                          : rl / r * (ell + (ell + 2.0) * b * r * r);
      } else {
        s = rk4_step(N, coef, (i - 1) * h_in, s, h_in);
      }
      gi[i] = s.g;
      dgi[i] = s.dg;
    }
  }

  // Outer decaying leg, integrated inward from R.
  std::vector<double> go(total - i_r0), dgo(total - i_r0);
  {
    const double cout_ = -lam * profile.munder;
    auto coef = [&](double r) { return cout_ - sigma / (r * r); };
    State s{1.0, -(std::sqrt(lam * profile.munder) + (N - 1) / (2.0 * R))};
    go.back() = s.g;
    dgo.back() = s.dg;
    for (std::size_t i = go.size() - 1; i-- > 0;) {
      const double r = r0 + (i + 1) * h_out;
      s = rk4_step(N, coef, r, s, -h_out);
      go[i] = s.g;
      dgo[i] = s.dg;
    }
  }

  // Coefficients from [continuity; jump]: A gi - B go = 0,  A gi' - B go' = j.
  const double fi = gi[i_r0], dfi = dgi[i_r0];
  const double fo = go[0], dfo = dgo[0];
  const double det = dfi * fo - fi * dfo;
  const double det_scale = std::abs(dfi * fo) + std::abs(fi * dfo);
  if (std::abs(det) < 1e-12 * det_scale)
    throw std::runtime_error("resonant mode: transmission system is singular");
  const double A = j * fo / det;
  const double B = j * fi / det;

  for (std::size_t i = 0; i <= i_r0; ++i) {
    entry.g[i] = A * gi[i];
    entry.dg[i] = A * dgi[i];
  }
  for (std::size_t i = i_r0 + 1; i < total; ++i) {
    entry.g[i] = B * go[i - i_r0];
    entry.dg[i] = B * dgo[i - i_r0];
  }
  entry.g_r0 = A * fi;
  return entry;
}

ModeTable build_mode_table(const RadialProfile& profile, int lmax) {
  if (lmax < 1) throw std::invalid_argument("build_mode_table: lmax must be >= 1");
  ModeTable table;
  table.dim = profile.dim;
  table.lambda0 = profile.lambda0;
  table.mbar = profile.mbar;
  table.munder = profile.munder;
  table.r0 = profile.r0;
  table.w_r0 = profile.w_r0();
  table.jump = profile.lambda0 * (profile.mbar + profile.munder) * profile.w_r0();
  for (int ell = 1; ell <= lmax; ++ell)
    table.entries.push_back(
        solve_mode(profile, laplace_beltrami_eigenvalue(profile.dim, ell), ell));
  return table;
}

double coercivity_constant(const ModeTable& table) {
  const double g1 = table.at_degree(1).g_r0;
  const double g2 = table.at_degree(2).g_r0;
  const double C = 2.0 * table.lambda0 * (table.mbar + table.munder) * table.w_r0 *
                   std::pow(table.r0, table.dim - 1) * (g1 - g2);
  if (!(C > 0.0))
    throw std::runtime_error("coercivity_constant: nonpositive constant (solver bug)");
  return C;
}

double predicted_second_derivative(const std::vector<HarmonicCoefficient>& coeffs,
                                   const ModeTable& table) {
  double norm2 = 0.0;
  for (const auto& c : coeffs) norm2 += c.value * c.value;
  const double g1 = table.at_degree(1).g_r0;
  double sum = 0.0;
  for (const auto& c : coeffs) {
    if (c.degree == 0) {
      if (c.value * c.value > 1e-16 * std::max(norm2, 1e-300))
        throw std::invalid_argument(
            "predicted_second_derivative: nonzero constant mode (set is not volume-normalized)");
      continue;
    }
    sum += (g1 - table.at_degree(c.degree).g_r0) * c.value * c.value;
  }
  return 2.0 * table.lambda0 * (table.mbar + table.munder) * table.w_r0 *
         std::pow(table.r0, table.dim - 1) * sum;
}

double sturm_residual(const RadialProfile& profile, const ModeTable& table, int ell_h,
                      int ell_k) {
  const ModeEntry& gh = table.at_degree(ell_h);
  const ModeEntry& gk = table.at_degree(ell_k);
  const int N = profile.dim;
  const std::size_t i_r0 = profile.i_r0;
  const std::size_t last = profile.r.size() - 1;

  std::vector<double> f(profile.r.size(), 0.0);
  for (std::size_t i = 1; i < profile.r.size(); ++i)
    f[i] = std::pow(profile.r[i], N - 3) * gh.g[i] * gk.g[i];
  const double h_in = profile.r[1] - profile.r[0];
  const double h_out = profile.r[i_r0 + 1] - profile.r[i_r0];
  const double integral = simpson(f, 0, i_r0, h_in) + simpson(f, i_r0, last, h_out);

  const double lhs = (gk.sigma - gh.sigma) * integral +
                     table.jump * std::pow(profile.r0, N - 1) * (gk.g_r0 - gh.g_r0);
  const double boundary =
      std::pow(profile.r[last], N - 1) *
      (gk.dg[last] * gh.g[last] - gh.dg[last] * gk.g[last]);
  const double scale = std::max({std::abs((gk.sigma - gh.sigma) * integral),
                                 std::abs(table.jump * std::pow(profile.r0, N - 1) *
                                          (gk.g_r0 - gh.g_r0)),
                                 1e-300});
  return std::abs(lhs - boundary) / scale;
}

void write_mode_table_csv(const ModeTable& table, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.precision(17);
  os << "ell,sigma,g_r0\n";
  for (const auto& e : table.entries)
    os << e.ell << "," << e.sigma << "," << e.g_r0 << "\n";
}

std::string mode_table_summary_json(const ModeTable& table) {
  nlohmann::json j;
  j["N"] = table.dim;
  j["lambda0"] = table.lambda0;
  j["mbar"] = table.mbar;
  j["munder"] = table.munder;
  j["w_r0"] = table.w_r0;
  j["jump"] = table.jump;
  j["coercivity"] = coercivity_constant(table);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : table.entries)
    arr.push_back({{"ell", e.ell}, {"sigma", e.sigma}, {"g_r0", e.g_r0}});
  j["modes"] = arr;
  return j.dump(2);
}

}  // namespace bbspectra
