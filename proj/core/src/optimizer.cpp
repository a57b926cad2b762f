// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bbspectra/linear_solver.hpp"

namespace bbspectra {

namespace {

std::vector<double> parse_params(const std::string& tag, std::size_t expected) {
  const auto colon = tag.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("domain tag missing parameters: " + tag);
  std::vector<double> out;
  std::stringstream ss(tag.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.size() != expected)
    throw std::invalid_argument("domain tag expects " + std::to_string(expected) + " parameters: " + tag);
  for (double v : out)
    if (!(v > 0.0)) throw std::invalid_argument("domain parameters must be positive: " + tag);
  return out;
}

}  // namespace

DomainSpec DomainSpec::parse(const std::string& tag) {
  DomainSpec spec;
  spec.tag = tag;
  spec.dim = 2;
  const std::string kind = tag.substr(0, tag.find(':'));
  if (kind == "disk") {
    const auto p = parse_params(tag, 1);
    const double r = p[0];
    spec.box_lo = {-r, -r, 0};
    spec.box_hi = {r, r, 0};
    spec.inside = [r](const std::array<double, 3>& x) {
      return x[0] * x[0] + x[1] * x[1] < r * r;
    };
    spec.analytic_inradius = r;
    spec.analytic_incenter = {{0.0, 0.0}};
  } else if (kind == "ellipse") {
    const auto p = parse_params(tag, 2);
    const double a = p[0], b = p[1];
    spec.box_lo = {-a, -b, 0};
    spec.box_hi = {a, b, 0};
    spec.inside = [a, b](const std::array<double, 3>& x) {
      const double u = x[0] / a, v = x[1] / b;
      return u * u + v * v < 1.0;
    };
    spec.analytic_inradius = std::min(a, b);
    spec.analytic_incenter = {{0.0, 0.0}};
  } else if (kind == "rectangle") {
    const auto p = parse_params(tag, 2);
    const double w = p[0], h = p[1];
    spec.box_lo = {-w / 2, -h / 2, 0};
    spec.box_hi = {w / 2, h / 2, 0};
    spec.inside = [w, h](const std::array<double, 3>& x) {
      return std::abs(x[0]) < w / 2 && std::abs(x[1]) < h / 2;
    };
    spec.analytic_inradius = std::min(w, h) / 2;
  } else if (kind == "stadium") {
    // Straight section of length L, semicircular caps of radius r.
    const auto p = parse_params(tag, 2);
    const double L = p[0], r = p[1];
    spec.box_lo = {-(L / 2 + r), -r, 0};
    spec.box_hi = {L / 2 + r, r, 0};
    spec.inside = [L, r](const std::array<double, 3>& x) {
      const double dx = std::max(std::abs(x[0]) - L / 2, 0.0);
      return dx * dx + x[1] * x[1] < r * r;
    };
    spec.analytic_inradius = r;
  } else if (kind == "lshape") {
    // L of arm width s inside the square (0, 2s)^2, re-centered at origin.
    const auto p = parse_params(tag, 1);
    const double s = p[0];
    spec.box_lo = {-s, -s, 0};
    spec.box_hi = {s, s, 0};
    spec.inside = [s](const std::array<double, 3>& x) {
      const double u = x[0] + s, v = x[1] + s;  // in (0, 2s)^2
      const bool in_square = u > 0 && u < 2 * s && v > 0 && v < 2 * s;
      return in_square && !(u >= s && v >= s);
    };
    spec.analytic_inradius = s / 2;
  } else {
    throw std::invalid_argument("unknown domain tag: " + tag);
  }
  // Pad the box by one half-cell margin so boundary cells are never clipped.
  return spec;
}

GridDomain DomainSpec::make_grid(int gridres) const {
  // gridres cells across the longer side, uniform spacing on both axes.
  const double wx = box_hi[0] - box_lo[0];
  const double wy = box_hi[1] - box_lo[1];
  const double h = std::max(wx, wy) / gridres;
  const int nx = std::max(1, static_cast<int>(std::ceil(wx / h - 1e-12)));
  const int ny = std::max(1, static_cast<int>(std::ceil(wy / h - 1e-12)));
  std::array<double, 3> lo = box_lo, hi = box_hi;
  hi[0] = lo[0] + nx * h;
  hi[1] = lo[1] + ny * h;
  return GridDomain(dim, lo, hi, {nx, ny, 1}, inside);
}

IncenterField incenter_field(const GridDomain& domain) {
  IncenterField f;
  f.distance = domain.boundary_distance();
  f.dstar = domain.discrete_inradius();
  f.argmax_set = domain.inradius_argmax(domain.spacing() / 2.0);
  return f;
}

namespace {

std::vector<std::int64_t> top_cells(const Vector& u, std::int64_t n_eps) {
  std::vector<std::int64_t> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::nth_element(order.begin(), order.begin() + n_eps, order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return u[a] != u[b] ? u[a] > u[b] : a < b;
                   });
  std::vector<std::int64_t> E(order.begin(), order.begin() + n_eps);
  std::sort(E.begin(), E.end());
  return E;
}

std::vector<std::int64_t> initial_set(const GridDomain& domain, std::int64_t n_eps,
                                      const OptimizeOptions& opts) {
  const std::int64_t n = domain.num_dofs();
  switch (opts.init) {
    case InitKind::user_mask: {
      std::vector<std::int64_t> E = opts.user_mask;
      std::sort(E.begin(), E.end());
      if (static_cast<std::int64_t>(E.size()) != n_eps)
        throw std::invalid_argument("user mask cell count does not match eps");
      return E;
    }
    case InitKind::random_seeded: {
      std::vector<std::int64_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(opts.seed);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::int64_t> E(order.begin(), order.begin() + n_eps);
      std::sort(E.begin(), E.end());
      return E;
    }
    case InitKind::incenter_ball:
    default: {
      // n_eps cells nearest to the (first) incenter argmax cell.
      const auto argmax = domain.inradius_argmax(domain.spacing() / 2.0);
      const auto c = domain.cell_center(domain.cell_of_dof(argmax.front()));
      std::vector<double> key(n);
      for (std::int64_t i = 0; i < n; ++i) {
        const auto x = domain.cell_center(domain.cell_of_dof(i));
        double d2 = 0;
        for (int d = 0; d < domain.dim(); ++d) d2 += (x[d] - c[d]) * (x[d] - c[d]);
        key[i] = d2;
      }
      std::vector<std::int64_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::nth_element(order.begin(), order.begin() + n_eps, order.end(),
                       [&](std::int64_t a, std::int64_t b) {
                         return key[a] != key[b] ? key[a] < key[b] : a < b;
                       });
      std::vector<std::int64_t> E(order.begin(), order.begin() + n_eps);
      std::sort(E.begin(), E.end());
      return E;
    }
  }
}

}  // namespace

OptimizeResult rearrangement_optimize(const GridDomain& domain, double eps, double mbar,
                                      double munder, const OptimizeOptions& opts) {
  const std::int64_t n_eps = favorable_cell_count(domain, eps);
  if (n_eps <= 0) throw std::invalid_argument("epsilon below resolution");
  if (n_eps > domain.num_dofs())
    throw std::invalid_argument("epsilon exceeds the domain measure");

  const SparseSymmetric K = assemble_stiffness(domain);
  ShiftedCholesky chol(K);

  OptimizeResult res;
  res.favorable = initial_set(domain, n_eps, opts);

  std::optional<double> guess;
  for (int it = 0; it < opts.maxit; ++it) {
    BangBangWeight w;
    w.mbar = mbar;
    w.munder = munder;
    w.eps = eps;
    w.favorable = res.favorable;
    const Vector M = assemble_weight_mass(domain, w);
    EigenOptions eopts;
    eopts.tol = opts.eigen_tol;
    eopts.cell_volume = std::pow(domain.spacing(), domain.dim());
    eopts.lambda_guess = guess;
    res.solution = principal_eigenvalue(chol, K, M, eopts);
    guess = res.solution.lambda;

    std::vector<std::int64_t> next = top_cells(res.solution.u, n_eps);
    std::int64_t changed = 0;
    {
      std::size_t i = 0, j = 0;
      while (i < res.favorable.size() && j < next.size()) {
        if (res.favorable[i] == next[j]) {
          ++i;
          ++j;
        } else if (res.favorable[i] < next[j]) {
          ++i;
          ++changed;
        } else {
          ++j;
          ++changed;
        }
      }
      changed += static_cast<std::int64_t>((res.favorable.size() - i) + (next.size() - j));
      changed /= 2;  // symmetric difference counted once per swapped pair
    }
    res.trace.iterations.push_back({res.solution.lambda, n_eps, changed});

    if (changed == 0) {
      res.trace.status = OptimizationTrace::Status::fixed_point;
      return res;
    }
    const std::size_t k = res.trace.iterations.size();
    if (k >= 2) {
      const double prev = res.trace.iterations[k - 2].lambda;
      if (prev - res.solution.lambda < opts.tol * std::abs(res.solution.lambda)) {
        res.favorable = std::move(next);
        res.trace.status = OptimizationTrace::Status::tol_reached;
        return res;
      }
    }
    res.favorable = std::move(next);
  }
  res.trace.status = OptimizationTrace::Status::maxit;
  return res;
}

PolarParametrization extract_polar_parametrization(const GridDomain& domain,
                                                   const std::vector<std::int64_t>& E,
                                                   std::array<double, 2> center,
                                                   int angular_res, double eps) {
  const double h = domain.spacing();
  std::vector<char> inE(domain.num_dofs(), 0);
  for (auto d : E) inE[d] = 1;

  auto member = [&](double x, double y) {
    if (x < domain.box_lo()[0] || x >= domain.box_hi()[0] || y < domain.box_lo()[1] ||
        y >= domain.box_hi()[1])
      return false;
    const std::int64_t ix = static_cast<std::int64_t>((x - domain.box_lo()[0]) / h);
    const std::int64_t iy = static_cast<std::int64_t>((y - domain.box_lo()[1]) / h);
    const std::int64_t cell = domain.cell_at({ix, iy, 0});
    const std::int64_t dof = domain.dof_of_cell(cell);
    return dof >= 0 && inE[dof];
  };
  if (!member(center[0], center[1]))
    throw std::invalid_argument("polar parametrization: center is not inside E");

  const double keps = std::pow(eps, 1.0 / domain.dim());
  const double r0 = unit_ball_radius(domain.dim());
  // March to a radius that surely clears E: a few blow-up radii.
  const double r_max = 3.0 * r0 * keps + 4.0 * h;
  const double step = h / 2.0;

  PolarParametrization out;
  out.theta.resize(angular_res);
  out.phi.resize(angular_res);
  bool violation = false;
  for (int a = 0; a < angular_res; ++a) {
    const double th = 2.0 * M_PI * a / angular_res;
    out.theta[a] = th;
    const double cx = std::cos(th), sy = std::sin(th);
    double boundary = -1.0;
    int transitions = 0;
    bool prev = true;
    for (double rho = step; rho <= r_max; rho += step) {
      const bool cur = member(center[0] + rho * cx, center[1] + rho * sy);
      if (prev && !cur) {
        ++transitions;
        if (transitions == 1) boundary = rho - step / 2.0;  // midpoint of the flip
      }
      if (!prev && cur) ++transitions;
      prev = cur;
    }
    if (transitions != 1) violation = true;
    out.phi[a] = boundary / keps - r0;
  }
  if (violation)
    throw std::runtime_error("polar parametrization: set is not star-shaped along some ray");

  double l2 = 0.0;
  for (int a = 0; a < angular_res; ++a) {
    l2 += out.phi[a] * out.phi[a];
    out.linf = std::max(out.linf, std::abs(out.phi[a]));
    const double dphi = (out.phi[(a + 1) % angular_res] - out.phi[a]) /
                        (2.0 * M_PI / angular_res);
    out.c1 = std::max(out.c1, std::abs(dphi));
  }
  out.l2 = std::sqrt(l2 * 2.0 * M_PI / angular_res);
  return out;
}

namespace {

// Connected components of E under 2*dim (face) or full box connectivity.
int count_components(const GridDomain& domain, const std::vector<std::int64_t>& E,
                     bool diagonal) {
  std::vector<char> inE(domain.num_dofs(), 0);
  for (auto d : E) inE[d] = 1;
  std::vector<char> seen(domain.num_dofs(), 0);
  int comps = 0;
  std::vector<std::int64_t> stack;
  for (auto seed : E) {
    if (seen[seed]) continue;
    ++comps;
    stack.push_back(seed);
    seen[seed] = 1;
    while (!stack.empty()) {
      const std::int64_t dof = stack.back();
      stack.pop_back();
      const auto cc = domain.cell_coords(domain.cell_of_dof(dof));
      for (std::int64_t dz = (domain.dim() > 2 ? -1 : 0); dz <= (domain.dim() > 2 ? 1 : 0); ++dz)
        for (std::int64_t dy = -1; dy <= 1; ++dy)
          for (std::int64_t dx = -1; dx <= 1; ++dx) {
            const int nnz_off = (dx != 0) + (dy != 0) + (dz != 0);
            if (nnz_off == 0) continue;
            if (!diagonal && nnz_off > 1) continue;
            std::array<std::int64_t, 3> nb{cc[0] + dx, cc[1] + dy, cc[2] + dz};
            bool ok = true;
            for (int d = 0; d < domain.dim(); ++d)
              ok = ok && nb[d] >= 0 && nb[d] < domain.cells_per_axis()[d];
            if (!ok) continue;
            const std::int64_t ndof = domain.dof_of_cell(domain.cell_at(nb));
            if (ndof < 0 || !inE[ndof] || seen[ndof]) continue;
            seen[ndof] = 1;
            stack.push_back(ndof);
          }
    }
  }
  return comps;
}

}  // namespace

DiagnosticsReport diagnostics(const GridDomain& domain, const std::vector<std::int64_t>& E,
                              const EigenSolution& solution, double eps, double lambda0,
                              const IncenterField& incenter) {
  DiagnosticsReport rep;
  rep.components_4 = count_components(domain, E, false);
  rep.components_8 = count_components(domain, E, true);

  const Vector& u = solution.u;
  const double umax = u.maxCoeff();
  // Strict local maxima on the grid graph (face neighbors; Dirichlet
  // neighbors count as zero). Far-field cells below 1e-9 umax are skipped:
  // they sit at the rounding floor of the linear solves.
  std::int64_t argmax_dof = 0;
  int maxima = 0;
  for (std::int64_t dof = 0; dof < domain.num_dofs(); ++dof) {
    if (u[dof] > u[argmax_dof]) argmax_dof = dof;
    if (u[dof] < 1e-9 * umax) continue;
    const auto cc = domain.cell_coords(domain.cell_of_dof(dof));
    bool strict = true;
    for (int d = 0; d < domain.dim() && strict; ++d) {
      for (int s = -1; s <= 1 && strict; s += 2) {
        auto nb = cc;
        nb[d] += s;
        if (nb[d] < 0 || nb[d] >= domain.cells_per_axis()[d]) continue;
        const std::int64_t ndof = domain.dof_of_cell(domain.cell_at(nb));
        const double nval = ndof >= 0 ? u[ndof] : 0.0;
        if (nval >= u[dof]) strict = false;
      }
    }
    if (strict) ++maxima;
  }
  rep.strict_local_maxima = maxima;

  std::array<double, 2> bary{0.0, 0.0};
  for (auto d : E) {
    const auto x = domain.cell_center(domain.cell_of_dof(d));
    bary[0] += x[0];
    bary[1] += x[1];
  }
  bary[0] /= static_cast<double>(E.size());
  bary[1] /= static_cast<double>(E.size());
  rep.barycenter = bary;
  const auto xm = domain.cell_center(domain.cell_of_dof(argmax_dof));
  rep.max_point = {xm[0], xm[1]};

  auto dist_to_argmax_set = [&](std::array<double, 2> p) {
    double best = std::numeric_limits<double>::infinity();
    for (auto d : incenter.argmax_set) {
      const auto x = domain.cell_center(domain.cell_of_dof(d));
      best = std::min(best, std::hypot(p[0] - x[0], p[1] - x[1]));
    }
    return best;
  };
  rep.barycenter_dist_to_incenter = dist_to_argmax_set(bary);
  rep.maxpoint_dist_to_incenter = dist_to_argmax_set(rep.max_point);

  rep.scaled_lambda = std::pow(eps, 2.0 / domain.dim()) * solution.lambda;
  rep.ratio_to_lambda0 = rep.scaled_lambda / lambda0;

  // alpha_eps: minimum of u over E-cells with a face neighbor outside E.
  std::vector<char> inE(domain.num_dofs(), 0);
  for (auto d : E) inE[d] = 1;
  double alpha = std::numeric_limits<double>::infinity();
  for (auto dof : E) {
    const auto cc = domain.cell_coords(domain.cell_of_dof(dof));
    bool boundary = false;
    for (int d = 0; d < domain.dim() && !boundary; ++d)
      for (int s = -1; s <= 1 && !boundary; s += 2) {
        auto nb = cc;
        nb[d] += s;
        if (nb[d] < 0 || nb[d] >= domain.cells_per_axis()[d]) {
          boundary = true;
          break;
        }
        const std::int64_t ndof = domain.dof_of_cell(domain.cell_at(nb));
        if (ndof < 0 || !inE[ndof]) boundary = true;
      }
    if (boundary) alpha = std::min(alpha, u[dof]);
  }
  rep.alpha_eps = alpha;
  return rep;
}

BlowupComparison blowup_compare(const GridDomain& domain, const EigenSolution& solution,
                                double eps, const RadialProfile& profile,
                                std::array<double, 2> center) {
  if (profile.norm_tag != Normalization::L2Domain)
    throw std::invalid_argument("blowup_compare: profile must carry the L2 normalization");
  const double k = std::pow(eps, 1.0 / domain.dim());
  const double h = domain.spacing();

  // Bilinear interpolation of u on cell centers (0 outside the mask).
  auto u_at = [&](double x, double y) {
    const double gx = (x - domain.box_lo()[0]) / h - 0.5;
    const double gy = (y - domain.box_lo()[1]) / h - 0.5;
    const std::int64_t ix = static_cast<std::int64_t>(std::floor(gx));
    const std::int64_t iy = static_cast<std::int64_t>(std::floor(gy));
    const double fx = gx - ix, fy = gy - iy;
    double acc = 0.0;
    for (int dy = 0; dy <= 1; ++dy)
      for (int dx = 0; dx <= 1; ++dx) {
        const std::int64_t cx = ix + dx, cy = iy + dy;
        if (cx < 0 || cy < 0 || cx >= domain.cells_per_axis()[0] ||
            cy >= domain.cells_per_axis()[1])
          continue;
        const std::int64_t dof = domain.dof_of_cell(domain.cell_at({cx, cy, 0}));
        if (dof < 0) continue;
        acc += solution.u[dof] * (dx ? fx : 1 - fx) * (dy ? fy : 1 - fy);
      }
    return acc;
  };

  // Distance from the center to the domain boundary, to bound the shared range.
  double dist_boundary = std::numeric_limits<double>::infinity();
  {
    const std::int64_t ix = static_cast<std::int64_t>((center[0] - domain.box_lo()[0]) / h);
    const std::int64_t iy = static_cast<std::int64_t>((center[1] - domain.box_lo()[1]) / h);
    const std::int64_t dof = domain.dof_of_cell(domain.cell_at({ix, iy, 0}));
    if (dof >= 0) dist_boundary = domain.boundary_distance()[dof];
  }

  BlowupComparison cmp;
  cmp.in_asymptotic_regime = dist_boundary / k >= profile.r0 + 2.0;

  const double amp = std::pow(k, domain.dim() / 2.0);
  const int n_ang = 64;
  const double r_lim = std::min(profile.R, dist_boundary / k);
  double l2 = 0.0;
  double prev_r = 0.0;
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const double r = profile.r[i];
    if (r > r_lim) break;
    double mean = 0.0;
    for (int a = 0; a < n_ang; ++a) {
      const double th = 2.0 * M_PI * a / n_ang;
      mean += u_at(center[0] + k * r * std::cos(th), center[1] + k * r * std::sin(th));
    }
    mean = amp * mean / n_ang;
    const double diff = mean - profile.w[i];
    cmp.sup_dist = std::max(cmp.sup_dist, std::abs(diff));
    const double dr = r - prev_r;
    l2 += diff * diff * unit_sphere_area(domain.dim()) * std::pow(r, domain.dim() - 1) * dr;
    prev_r = r;
  }
  cmp.l2_dist = std::sqrt(l2);
  return cmp;
}

DomainGapFit gap_fit_domain(const std::vector<std::pair<double, double>>& eps_lambda,
                            double lambda0, double munder, double dstar,
                            double noise_floor) {
  constexpr int N = 2;  // desk-scale sweeps are two-dimensional
  DomainGapFit fit;
  fit.target = -2.0 * std::sqrt(lambda0 * munder) * dstar;
  std::vector<std::pair<double, double>> pts;  // (eps^{-1/N}, log gap)
  for (const auto& [eps, lam] : eps_lambda) {
    const double gap = std::pow(eps, 2.0 / N) * lam - lambda0;
    if (gap > noise_floor) pts.emplace_back(std::pow(eps, -1.0 / N), std::log(gap));
  }
  fit.usable_points = static_cast<int>(pts.size());
  if (pts.size() < 3) {
    fit.inconclusive = true;
    return fit;
  }
  std::sort(pts.begin(), pts.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    fit.pair_slopes.push_back((pts[i + 1].second - pts[i].second) /
                              (pts[i + 1].first - pts[i].first));
  return fit;
}

void write_mask_pgm(const GridDomain& domain, const std::vector<std::int64_t>& E,
                    const std::string& path) {
  std::vector<char> inE(domain.num_dofs(), 0);
  for (auto d : E) inE[d] = 1;
  const std::int64_t nx = domain.cells_per_axis()[0];
  const std::int64_t ny = domain.cells_per_axis()[1];
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "P5\n" << nx << " " << ny << "\n255\n";
  std::vector<unsigned char> row(nx);
  for (std::int64_t y = ny - 1; y >= 0; --y) {  // top row first
    for (std::int64_t x = 0; x < nx; ++x) {
      const std::int64_t dof = domain.dof_of_cell(domain.cell_at({x, y, 0}));
      row[x] = dof < 0 ? 0 : (inE[dof] ? 255 : 110);
    }
    os.write(reinterpret_cast<const char*>(row.data()), nx);
  }
}

std::string mask_runlength_json(const GridDomain& domain, const std::vector<std::int64_t>& E) {
  std::vector<char> inE(domain.num_dofs(), 0);
  for (auto d : E) inE[d] = 1;
  const std::int64_t nx = domain.cells_per_axis()[0];
  const std::int64_t ny = domain.cells_per_axis()[1];
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t y = 0; y < ny; ++y) {
    nlohmann::json runs = nlohmann::json::array();
    std::int64_t start = -1;
    for (std::int64_t x = 0; x <= nx; ++x) {
      const std::int64_t dof = x < nx ? domain.dof_of_cell(domain.cell_at({x, y, 0})) : -1;
      const bool in = x < nx && dof >= 0 && inE[dof];
      if (in && start < 0) start = x;
      if (!in && start >= 0) {
        runs.push_back({start, x - start});
        start = -1;
      }
    }
    rows.push_back(runs);
  }
  nlohmann::json j;
  j["cells"] = {nx, ny};
  j["spacing"] = domain.spacing();
  j["box_lo"] = {domain.box_lo()[0], domain.box_lo()[1]};
  j["rows"] = rows;
  return j.dump();
}

}  // namespace bbspectra
