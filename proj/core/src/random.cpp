#include "flosim/random.hpp"

#include <Eigen/QR>

namespace flosim {

Mat random_antisym(Eigen::Index d, Rng& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  Mat a = Mat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      a(i, j) = nd(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

Mat random_passive(Eigen::Index d, Rng& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  const Eigen::Index n = d / 2;
  Mat b = Mat::Zero(d, d);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p; q < n; ++q) {
      double x = p == q ? 0.0 : nd(rng), y = nd(rng);
      Eigen::Matrix2d blk;
      blk << x, y, -y, x;
      b.block<2, 2>(2 * p, 2 * q) = blk;
      b.block<2, 2>(2 * q, 2 * p) = -blk.transpose();
    }
  return b;
}

std::vector<int> random_even_bits(int m, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> b(m);
  int ones = 0;
  for (int i = 0; i < m; ++i) ones += b[i] = coin(rng);
  if (ones % 2) b[0] ^= 1;
  return b;
}

Eigen::Matrix2cd random_u2(Rng& rng) {
  std::normal_distribution<double> nd;
  Eigen::Matrix2cd z;
  for (int i = 0; i < 4; ++i) z(i / 2, i % 2) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
  return Eigen::Matrix2cd(qr.householderQ());
}

Matchgate random_matchgate(int q, Rng& rng) {
  Eigen::Matrix2cd a = random_u2(rng), b = random_u2(rng);
  b *= std::sqrt(a.determinant() / b.determinant());
  return Matchgate{q, a, b};
}

Circuit random_circuit(int n, int flo_gates, const std::vector<double>& cphases, Rng& rng) {
  Circuit c;
  c.n = n;
  c.input = random_even_bits(n, rng);
  c.output = random_even_bits(n, rng);
  std::uniform_int_distribution<int> kind(0, 3), qpick(0, n - 2), mpick(0, 2 * n - 1);
  std::uniform_real_distribution<double> ud(-M_PI, M_PI);
  for (int g = 0; g < flo_gates; ++g) {
    switch (kind(rng)) {
      case 0: c.gates.emplace_back(random_matchgate(qpick(rng), rng)); break;
      case 1: {
        int j = mpick(rng), k = mpick(rng);
        if (j == k) k = (j + 1) % (2 * n);
        c.gates.emplace_back(Elementary{ud(rng), j, k});
        break;
      }
      case 2: c.gates.emplace_back(PassiveGen{random_passive(2 * n, rng, 0.7), ""}); break;
      default: c.gates.emplace_back(GeneralGen{random_antisym(2 * n, rng, 0.7), ""});
    }
  }
  for (double th : cphases) {
    std::uniform_int_distribution<std::size_t> at(0, c.gates.size());
    c.gates.insert(c.gates.begin() + static_cast<long>(at(rng)), ControlledPhase{th, qpick(rng)});
  }
  return c;
}

}  // namespace flosim
