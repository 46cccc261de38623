#include "nsbundle/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

// Problem definitions and standard starting points follow the academic
// nonsmooth test collection of Luksan and Vlcek (TR-798), with the usual
// deterministic tie break: the first piece attaining the max supplies the
// subgradient.

namespace nsbundle {

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

double sign0(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// max-of-pieces helper: values and gradients supplied per piece.
struct PieceMax {
  double value = -std::numeric_limits<double>::infinity();
  int index = -1;
  void offer(int i, double v) {
    if (v > value) {
      value = v;
      index = i;
    }
  }
};

Evaluation cb2(const Vector& x) {
  const double p1 = x(0) * x(0) + std::pow(x(1), 4);
  const double p2 = (2.0 - x(0)) * (2.0 - x(0)) + (2.0 - x(1)) * (2.0 - x(1));
  const double p3 = 2.0 * std::exp(x(1) - x(0));
  PieceMax m;
  m.offer(0, p1);
  m.offer(1, p2);
  m.offer(2, p3);
  Evaluation ev{m.value, Vector(2)};
  switch (m.index) {
    case 0: ev.subgrad = vec({2.0 * x(0), 4.0 * std::pow(x(1), 3)}); break;
    case 1: ev.subgrad = vec({-2.0 * (2.0 - x(0)), -2.0 * (2.0 - x(1))}); break;
    default: ev.subgrad = vec({-p3, p3}); break;
  }
  return ev;
}

Evaluation cb3(const Vector& x) {
  const double p1 = std::pow(x(0), 4) + x(1) * x(1);
  const double p2 = (2.0 - x(0)) * (2.0 - x(0)) + (2.0 - x(1)) * (2.0 - x(1));
  const double p3 = 2.0 * std::exp(x(1) - x(0));
  PieceMax m;
  m.offer(0, p1);
  m.offer(1, p2);
  m.offer(2, p3);
  Evaluation ev{m.value, Vector(2)};
  switch (m.index) {
    case 0: ev.subgrad = vec({4.0 * std::pow(x(0), 3), 2.0 * x(1)}); break;
    case 1: ev.subgrad = vec({-2.0 * (2.0 - x(0)), -2.0 * (2.0 - x(1))}); break;
    default: ev.subgrad = vec({-p3, p3}); break;
  }
  return ev;
}

Evaluation dem(const Vector& x) {
  const double p1 = 5.0 * x(0) + x(1);
  const double p2 = -5.0 * x(0) + x(1);
  const double p3 = x(0) * x(0) + x(1) * x(1) + 4.0 * x(1);
  PieceMax m;
  m.offer(0, p1);
  m.offer(1, p2);
  m.offer(2, p3);
  Evaluation ev{m.value, Vector(2)};
  switch (m.index) {
    case 0: ev.subgrad = vec({5.0, 1.0}); break;
    case 1: ev.subgrad = vec({-5.0, 1.0}); break;
    default: ev.subgrad = vec({2.0 * x(0), 2.0 * x(1) + 4.0}); break;
  }
  return ev;
}

Evaluation ql(const Vector& x) {
  const double q = x(0) * x(0) + x(1) * x(1);
  const double p1 = q;
  const double p2 = q + 10.0 * (-4.0 * x(0) - x(1) + 4.0);
  const double p3 = q + 10.0 * (-x(0) - 2.0 * x(1) + 6.0);
  PieceMax m;
  m.offer(0, p1);
  m.offer(1, p2);
  m.offer(2, p3);
  Evaluation ev{m.value, vec({2.0 * x(0), 2.0 * x(1)})};
  if (m.index == 1) ev.subgrad += vec({-40.0, -10.0});
  if (m.index == 2) ev.subgrad += vec({-10.0, -20.0});
  return ev;
}

Evaluation lq(const Vector& x) {
  const double p1 = -x(0) - x(1);
  const double p2 = p1 + x(0) * x(0) + x(1) * x(1) - 1.0;
  PieceMax m;
  m.offer(0, p1);
  m.offer(1, p2);
  Evaluation ev{m.value, Vector(2)};
  if (m.index == 0) {
    ev.subgrad = vec({-1.0, -1.0});
  } else {
    ev.subgrad = vec({2.0 * x(0) - 1.0, 2.0 * x(1) - 1.0});
  }
  return ev;
}

Evaluation mifflin1(const Vector& x) {
  const double r = x(0) * x(0) + x(1) * x(1) - 1.0;
  Evaluation ev;
  if (r >= 0.0) {
    ev.value = -x(0) + 20.0 * r;
    ev.subgrad = vec({-1.0 + 40.0 * x(0), 40.0 * x(1)});
  } else {
    ev.value = -x(0);
    ev.subgrad = vec({-1.0, 0.0});
  }
  return ev;
}

Evaluation mifflin2(const Vector& x) {
  const double r = x(0) * x(0) + x(1) * x(1) - 1.0;
  // 2r + 1.75|r| has slopes 3.75 (r >= 0) and 0.25 (r < 0), both positive,
  // so the composition with the convex r stays convex.
  const double c = r >= 0.0 ? 3.75 : 0.25;
  Evaluation ev;
  ev.value = -x(0) + 2.0 * r + 1.75 * std::abs(r);
  ev.subgrad = vec({-1.0 + c * 2.0 * x(0), c * 2.0 * x(1)});
  return ev;
}

Evaluation rosen_suzuki(const Vector& x) {
  const double f1 = x(0) * x(0) + x(1) * x(1) + 2.0 * x(2) * x(2) + x(3) * x(3) -
                    5.0 * x(0) - 5.0 * x(1) - 21.0 * x(2) + 7.0 * x(3);
  const double g1 = x(0) * x(0) + x(1) * x(1) + x(2) * x(2) + x(3) * x(3) +
                    x(0) - x(1) + x(2) - x(3) - 8.0;
  const double g2 = x(0) * x(0) + 2.0 * x(1) * x(1) + x(2) * x(2) +
                    2.0 * x(3) * x(3) - x(0) - x(3) - 10.0;
  const double g3 = 2.0 * x(0) * x(0) + x(1) * x(1) + x(2) * x(2) +
                    2.0 * x(0) - x(1) - x(3) - 5.0;
  PieceMax m;
  m.offer(0, f1);
  m.offer(1, f1 + 10.0 * g1);
  m.offer(2, f1 + 10.0 * g2);
  m.offer(3, f1 + 10.0 * g3);
  Vector grad = vec({2.0 * x(0) - 5.0, 2.0 * x(1) - 5.0, 4.0 * x(2) - 21.0,
                     2.0 * x(3) + 7.0});
  switch (m.index) {
    case 1:
      grad += 10.0 * vec({2.0 * x(0) + 1.0, 2.0 * x(1) - 1.0, 2.0 * x(2) + 1.0,
                          2.0 * x(3) - 1.0});
      break;
    case 2:
      grad += 10.0 * vec({2.0 * x(0) - 1.0, 4.0 * x(1), 2.0 * x(2),
                          4.0 * x(3) - 1.0});
      break;
    case 3:
      grad += 10.0 * vec({4.0 * x(0) + 2.0, 2.0 * x(1) - 1.0, 2.0 * x(2), -1.0});
      break;
    default:
      break;
  }
  return Evaluation{m.value, std::move(grad)};
}

struct ShorData {
  Eigen::Matrix<double, 10, 5> a;
  Eigen::Matrix<double, 10, 1> b;
  ShorData() {
    a << 0, 0, 0, 0, 0,
         2, 1, 1, 1, 3,
         1, 2, 1, 1, 2,
         1, 4, 1, 2, 2,
         3, 2, 1, 0, 1,
         0, 2, 1, 0, 1,
         1, 1, 1, 1, 1,
         1, 0, 1, 2, 1,
         0, 0, 2, 1, 0,
         1, 1, 2, 0, 0;
    b << 1, 5, 10, 2, 4, 3, 1.7, 2.5, 6, 3.5;
  }
};

Evaluation shor(const Vector& x) {
  static const ShorData data;
  PieceMax m;
  for (int i = 0; i < 10; ++i) {
    const double v = data.b(i) * (x - data.a.row(i).transpose()).squaredNorm();
    m.offer(i, v);
  }
  Vector grad = 2.0 * data.b(m.index) * (x - data.a.row(m.index).transpose());
  return Evaluation{m.value, std::move(grad)};
}

struct MaxquadData {
  Eigen::MatrixXd A[5];
  Vector b[5];
  MaxquadData() {
    for (int k = 1; k <= 5; ++k) {
      Eigen::MatrixXd& Ak = A[k - 1];
      Ak.resize(10, 10);
      for (int i = 1; i <= 10; ++i) {
        for (int j = i + 1; j <= 10; ++j) {
          Ak(i - 1, j - 1) = std::exp(static_cast<double>(i) / j) *
                             std::cos(static_cast<double>(i) * j) * std::sin(k);
          Ak(j - 1, i - 1) = Ak(i - 1, j - 1);
        }
      }
      for (int i = 1; i <= 10; ++i) {
        double off = 0.0;
        for (int j = 1; j <= 10; ++j) {
          if (j != i) off += std::abs(Ak(i - 1, j - 1));
        }
        Ak(i - 1, i - 1) = i * std::abs(std::sin(static_cast<double>(k))) / 10.0 + off;
      }
      Vector& bk = b[k - 1];
      bk.resize(10);
      for (int i = 1; i <= 10; ++i) {
        bk(i - 1) = std::exp(static_cast<double>(i) / k) *
                    std::sin(static_cast<double>(i) * k);
      }
    }
  }
};

Evaluation maxquad(const Vector& x) {
  static const MaxquadData data;
  PieceMax m;
  for (int k = 0; k < 5; ++k) {
    m.offer(k, x.dot(data.A[k] * x) - data.b[k].dot(x));
  }
  Vector grad = 2.0 * (data.A[m.index] * x) - data.b[m.index];
  return Evaluation{m.value, std::move(grad)};
}

Evaluation maxq(const Vector& x) {
  PieceMax m;
  for (Eigen::Index i = 0; i < x.size(); ++i) m.offer(static_cast<int>(i), x(i) * x(i));
  Vector grad = Vector::Zero(x.size());
  grad(m.index) = 2.0 * x(m.index);
  return Evaluation{m.value, std::move(grad)};
}

Evaluation maxl(const Vector& x) {
  PieceMax m;
  for (Eigen::Index i = 0; i < x.size(); ++i) m.offer(static_cast<int>(i), std::abs(x(i)));
  Vector grad = Vector::Zero(x.size());
  grad(m.index) = sign0(x(m.index));
  return Evaluation{m.value, std::move(grad)};
}

Evaluation goffin(const Vector& x) {
  PieceMax m;
  for (Eigen::Index i = 0; i < x.size(); ++i) m.offer(static_cast<int>(i), x(i));
  Evaluation ev;
  ev.value = 50.0 * m.value - x.sum();
  ev.subgrad = Vector::Constant(x.size(), -1.0);
  ev.subgrad(m.index) += 50.0;
  return ev;
}

Evaluation mxhilb(const Vector& x) {
  const Eigen::Index n = x.size();
  PieceMax m;
  double r_at_max = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) r += x(j) / static_cast<double>(i + j + 1);
    if (std::abs(r) > m.value) r_at_max = r;
    m.offer(static_cast<int>(i), std::abs(r));
  }
  Evaluation ev;
  ev.value = m.value;
  ev.subgrad = Vector::Zero(n);
  const double s = sign0(r_at_max);
  if (s != 0.0) {
    for (Eigen::Index j = 0; j < n; ++j) {
      ev.subgrad(j) = s / static_cast<double>(m.index + j + 1);
    }
  }
  return ev;
}

Evaluation l1hilb(const Vector& x) {
  const Eigen::Index n = x.size();
  Evaluation ev;
  ev.value = 0.0;
  ev.subgrad = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) r += x(j) / static_cast<double>(i + j + 1);
    ev.value += std::abs(r);
    const double s = sign0(r);
    if (s != 0.0) {
      for (Eigen::Index j = 0; j < n; ++j) {
        ev.subgrad(j) += s / static_cast<double>(i + j + 1);
      }
    }
  }
  return ev;
}

std::vector<ProblemInstance> build_registry() {
  std::vector<ProblemInstance> reg;
  auto add = [&](std::string name, int n, double fstar, Vector x0,
                 std::optional<Vector> xstar, ObjectiveOracle::Fn fn) {
    ProblemInstance p;
    p.name = std::move(name);
    p.dimension = n;
    p.fstar = fstar;
    p.x0 = std::move(x0);
    p.xstar = std::move(xstar);
    p.fn = std::move(fn);
    reg.push_back(std::move(p));
  };

  add("CB2", 2, 1.952224, vec({1.0, -0.1}), std::nullopt, cb2);
  add("CB3", 2, 2.0, vec({2.0, 2.0}), vec({1.0, 1.0}), cb3);
  add("DEM", 2, -3.0, vec({1.0, 1.0}), vec({0.0, -3.0}), dem);
  add("QL", 2, 7.2, vec({-1.0, 5.0}), vec({1.2, 2.4}), ql);
  add("LQ", 2, -std::sqrt(2.0), vec({-0.5, -0.5}),
      vec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}), lq);
  add("Mifflin1", 2, -1.0, vec({0.8, 0.6}), vec({1.0, 0.0}), mifflin1);
  add("Mifflin2", 2, -1.0, vec({-1.0, -1.0}), vec({1.0, 0.0}), mifflin2);
  add("Rosen-Suzuki", 4, -44.0, Vector::Zero(4), vec({0.0, 1.0, 2.0, -1.0}),
      rosen_suzuki);
  add("Shor", 5, 22.600162, vec({0.0, 0.0, 0.0, 0.0, 1.0}), std::nullopt, shor);
  add("Maxquad", 10, -0.841408, Vector::Zero(10), std::nullopt, maxquad);

  Vector maxq0(20);
  for (int i = 1; i <= 20; ++i) maxq0(i - 1) = i <= 10 ? i : -i;
  add("Maxq", 20, 0.0, maxq0, Vector::Zero(20), maxq);
  add("Maxl", 20, 0.0, maxq0, Vector::Zero(20), maxl);

  Vector goffin0(50);
  for (int i = 1; i <= 50; ++i) goffin0(i - 1) = i - 25.5;
  add("Goffin", 50, 0.0, goffin0, Vector::Zero(50), goffin);
  add("MxHilb", 50, 0.0, Vector::Ones(50), Vector::Zero(50), mxhilb);
  add("L1Hilb", 50, 0.0, Vector::Ones(50), Vector::Zero(50), l1hilb);
  return reg;
}

const std::vector<ProblemInstance>& registry() {
  static const std::vector<ProblemInstance> reg = build_registry();
  return reg;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

ObjectiveOracle ProblemInstance::make_oracle() const {
  return ObjectiveOracle(dimension, fn);
}

const std::vector<std::string>& list_problems() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const ProblemInstance& p : registry()) out.push_back(p.name);
    return out;
  }();
  return names;
}

const ProblemInstance& get_problem(const std::string& name_or_index) {
  const auto& reg = registry();
  const std::string key = lower(name_or_index);
  for (const ProblemInstance& p : reg) {
    if (lower(p.name) == key) return p;
  }
  // 1-based index form ("1".."15").
  if (!key.empty() && std::all_of(key.begin(), key.end(),
                                  [](unsigned char c) { return std::isdigit(c); })) {
    const std::size_t idx = std::stoul(key);
    if (idx >= 1 && idx <= reg.size()) return reg[idx - 1];
  }
  throw std::invalid_argument("unknown problem: " + name_or_index);
}

}  // namespace nsbundle
