#include "monoforge/graph/expander.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::graph {

ExpanderCert check_expander(const Graph& g, double tol, SpectrumMode mode) {
  const std::size_t n = g.n();
  if (n < 2) throw std::invalid_argument("expander check needs at least two vertices");
  if (n > 2000) throw EnumerationTooLarge("dense eigensolve limited to 2000 vertices");
  const std::size_t d = g.degree(0);
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) != d) throw NotRegular();

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nn, nn);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const auto& ev = es.eigenvalues();  // ascending
  const auto& vec = es.eigenvectors();

  ExpanderCert cert;
  cert.d = d;
  cert.mode = mode;
  cert.lambda1 = ev(nn - 1);
  Eigen::Index second = nn - 2;
  if (mode == SpectrumMode::Absolute && std::abs(ev(0)) > std::abs(ev(nn - 2))) second = 0;
  cert.lambda2 = mode == SpectrumMode::Absolute ? std::abs(ev(second)) : ev(second);
  for (Eigen::Index idx : {nn - 1, second})
    cert.residual = std::max(cert.residual, (a * vec.col(idx) - ev(idx) * vec.col(idx)).norm());
  cert.threshold = std::pow(static_cast<double>(d), 0.75);
  cert.passes = cert.residual <= tol && cert.lambda2 <= cert.threshold + tol;
  return cert;
}

Graph search_circulant_expander(std::size_t n, std::size_t d) {
  if (n < 3 || d == 0 || d >= n) throw PreconditionViolated("no circulant of that degree");
  const bool half = d % 2 == 1;
  if (half && n % 2 == 1) throw PreconditionViolated("odd degree needs an even vertex count");
  const std::size_t pairs = d / 2;
  std::vector<std::size_t> offsets;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (offsets.size() == pairs) {
      auto all = offsets;
      if (half) all.push_back(n / 2);
      Graph g = circulant_graph(n, all);
      return check_expander(g).passes;
    }
    for (std::size_t o = from; 2 * o < n; ++o) {
      offsets.push_back(o);
      if (rec(o + 1)) return true;
      offsets.pop_back();
    }
    return false;
  };
  if (!rec(1)) throw PreconditionViolated("no circulant expander found");
  if (half) offsets.push_back(n / 2);
  return circulant_graph(n, offsets);
}

}  // namespace monoforge::graph
