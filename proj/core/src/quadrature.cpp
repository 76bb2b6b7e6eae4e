#include "zaremba/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zaremba {

std::vector<QuadNode1D> gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre order out of range");
  std::vector<QuadNode1D> nodes(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = {-x, w};
    nodes[n - 1 - i] = {x, w};
  }
  return nodes;
}

namespace {

void add_orbit1(std::vector<TriangleQuadNode>& rule, double w) {
  rule.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3, w});
}

// Three permutations of (a, b, b) with a + 2b = 1.
void add_orbit3(std::vector<TriangleQuadNode>& rule, double a, double w) {
  const double b = (1.0 - a) / 2.0;
  rule.push_back({a, b, b, w});
  rule.push_back({b, a, b, w});
  rule.push_back({b, b, a, w});
}

// Six permutations of (a, b, c) with a + b + c = 1.
void add_orbit6(std::vector<TriangleQuadNode>& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  rule.push_back({a, b, c, w});
  rule.push_back({a, c, b, w});
  rule.push_back({b, a, c, w});
  rule.push_back({b, c, a, w});
  rule.push_back({c, a, b, w});
  rule.push_back({c, b, a, w});
}

// Duffy-style conical product: x = u, y = v (1 - u) maps the unit square to
// the reference triangle with Jacobian (1 - u). Exact for total degree d when
// the u-rule handles degree d+1.
std::vector<TriangleQuadNode> duffy_rule(int degree) {
  const int n = (degree + 3) / 2 + 1;
  const auto gl = gauss_legendre(n);
  std::vector<TriangleQuadNode> rule;
  for (const QuadNode1D& gu : gl) {
    const double u = 0.5 * (gu.x + 1.0);
    for (const QuadNode1D& gv : gl) {
      const double v = 0.5 * (gv.x + 1.0);
      const double x = u, y = v * (1.0 - u);
      // Factor 2 renormalizes the reference-triangle area 1/2 so weights sum to 1.
      const double w = 2.0 * 0.25 * gu.w * gv.w * (1.0 - u);
      rule.push_back({1.0 - x - y, x, y, w});
    }
  }
  return rule;
}

}  // namespace

std::vector<TriangleQuadNode> triangle_rule(int order) {
  if (order < 1 || order > 12) throw std::invalid_argument("triangle rule order out of range");
  std::vector<TriangleQuadNode> rule;
  switch (order) {
    case 1:
      add_orbit1(rule, 1.0);
      break;
    case 2:
      add_orbit3(rule, 2.0 / 3.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      add_orbit3(rule, 0.108103018168070, 0.223381589678011);
      add_orbit3(rule, 0.816847572980459, 0.109951743655322);
      break;
    case 5:
      add_orbit1(rule, 0.225);
      add_orbit3(rule, 0.059715871789770, 0.132394152788506);
      add_orbit3(rule, 0.797426985353087, 0.125939180544827);
      break;
    case 6:
      add_orbit3(rule, 0.501426509658179, 0.116786275726379);
      add_orbit3(rule, 0.873821971016996, 0.050844906370207);
      add_orbit6(rule, 0.053145049844817, 0.310352451033784, 0.082851075618374);
      break;
    case 7:
    case 8:
      add_orbit1(rule, 0.14431560767778717);
      add_orbit3(rule, 0.081414823414553688, 0.095091634267284625);
      add_orbit3(rule, 0.65886138449647959, 0.10321737053471825);
      add_orbit3(rule, 0.89890554336593805, 0.032458497623198080);
      add_orbit6(rule, 0.0083947774099576053, 0.26311282963463811, 0.027230314174434994);
      break;
    default:
      // Higher orders use the tensor rule; still exact at the stated degree.
      return duffy_rule(order);
  }
  return rule;
}

}  // namespace zaremba
