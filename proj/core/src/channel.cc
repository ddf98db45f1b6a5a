// Copyright 2026 The ntoffoli Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ntoffoli/channel.h"

#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace ntoffoli {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

}  // namespace

Channel Channel::unitary(Operator u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary channel needs a square matrix");
  Channel c(u.rows(), Kind::kUnitary);
  c.unitary_ = std::move(u);
  return c;
}

Channel Channel::from_map(Index dim, Map map) {
  if (!map) throw std::invalid_argument("empty channel map");
  Channel c(dim, Kind::kMap);
  c.map_ = std::move(map);
  return c;
}

Channel Channel::from_generator(const StructuredGenerator& gen, double t) {
  if (gen.is_time_dependent()) throw std::invalid_argument("block exponentiation needs a static generator");
  const Index d = gen.dim();
  const int m = gen.num_qubits();
  const Index nl = d * d;
  auto lidx = [d](Index a, Index b) { return a + b * d; };

  DisjointSets sets(nl);
  for (int q = 0; q < m; ++q) {
    const Index mask = static_cast<Index>(qubit_mask(q, m));
    if (gen.noise().relaxation_rate(q) > 0.0) {
      for (Index b = 0; b < d; ++b) {
        if (b & mask) continue;
        for (Index a = 0; a < d; ++a) {
          if (!(a & mask)) sets.unite(lidx(a, b), lidx(a | mask, b | mask));
        }
      }
    }
  }
  for (const auto& term : gen.terms()) {
    if (term.op(0, 1) == Complex(0.0) && term.op(1, 0) == Complex(0.0)) continue;
    const Index mask = static_cast<Index>(qubit_mask(term.qubit, m));
    for (Index b = 0; b < d; ++b) {
      for (Index a = 0; a < d; ++a) {
        sets.unite(lidx(a, b), lidx(a ^ mask, b));
        sets.unite(lidx(a, b), lidx(a, b ^ mask));
      }
    }
  }

  std::vector<Index> root_to_block(static_cast<std::size_t>(nl), -1);
  auto blocks = std::make_shared<std::vector<Block>>();
  std::vector<Index> local(static_cast<std::size_t>(nl));
  for (Index k = 0; k < nl; ++k) {
    const Index r = sets.find(k);
    if (root_to_block[r] < 0) {
      root_to_block[r] = static_cast<Index>(blocks->size());
      blocks->push_back({});
    }
    auto& blk = (*blocks)[root_to_block[r]];
    local[k] = static_cast<Index>(blk.index.size());
    blk.index.push_back(k);
  }

  const Operator& mult = gen.multiplier();
  for (auto& blk : *blocks) {
    const Index n = static_cast<Index>(blk.index.size());
    Operator l = Operator::Zero(n, n);
    for (Index r = 0; r < n; ++r) {
      const Index k = blk.index[r];
      const Index a = k % d, b = k / d;
      l(r, r) += mult(a, b);
      for (int q = 0; q < m; ++q) {
        const double g1 = gen.noise().relaxation_rate(q);
        const Index mask = static_cast<Index>(qubit_mask(q, m));
        if (g1 > 0.0 && !(a & mask) && !(b & mask)) l(r, local[lidx(a | mask, b | mask)]) += g1;
      }
      for (const auto& term : gen.terms()) {
        const Index mask = static_cast<Index>(qubit_mask(term.qubit, m));
        const int ba = bit_of(a, term.qubit, m), bb = bit_of(b, term.qubit, m);
        // -i (A x)_{ab} = -i sum_{a'} A[ba][ba'] x_{a'b}
        for (int s = 0; s < 2; ++s) {
          const Index ap = s == ba ? a : (a ^ mask);
          const Complex coeff = -kI * term.op(ba, s);
          if (coeff != Complex(0.0)) l(r, local[lidx(ap, b)]) += coeff;
        }
        // +i (x A)_{ab} = +i sum_{b'} x_{ab'} A[bb'][bb]
        for (int s = 0; s < 2; ++s) {
          const Index bp = s == bb ? b : (b ^ mask);
          const Complex coeff = kI * term.op(s, bb);
          if (coeff != Complex(0.0)) l(r, local[lidx(a, bp)]) += coeff;
        }
      }
    }
    blk.s = (l * t).exp();
  }

  Channel c(d, Kind::kBlocks);
  c.blocks_ = std::move(blocks);
  return c;
}

Operator Channel::apply(const Operator& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw std::invalid_argument("channel input has the wrong dimension");
  Operator y;
  switch (kind_) {
    case Kind::kUnitary:
      y = unitary_ * x * unitary_.adjoint();
      break;
    case Kind::kMap:
      y = map_(x);
      break;
    case Kind::kBlocks: {
      y = Operator::Zero(dim_, dim_);
      const Complex* in = x.data();
      Complex* out = y.data();
      for (const auto& blk : *blocks_) {
        const Index n = static_cast<Index>(blk.index.size());
        Vector v(n);
        for (Index r = 0; r < n; ++r) v(r) = in[blk.index[r]];
        const Vector w = blk.s * v;
        for (Index r = 0; r < n; ++r) out[blk.index[r]] = w(r);
      }
      break;
    }
  }
  if (phase_.size() > 0) {
    for (Index b = 0; b < dim_; ++b) {
      for (Index a = 0; a < dim_; ++a) y(a, b) *= phase_(a) * std::conj(phase_(b));
    }
  }
  return y;
}

Channel Channel::rotated(const Operator& generator, double t) const {
  if (!is_diagonal(generator) || generator.rows() != dim_) {
    throw std::invalid_argument("channel rotation needs a diagonal generator of matching size");
  }
  Channel c = *this;
  if (c.phase_.size() == 0) c.phase_ = Vector::Ones(dim_);
  for (Index a = 0; a < dim_; ++a) c.phase_(a) *= std::exp(kI * generator(a, a) * t);
  return c;
}

double Channel::trace_defect() const {
  double worst = 0.0;
  if (kind_ == Kind::kBlocks) {
    // phases cancel on the diagonal, so they do not affect traces
    std::vector<Complex> tr(static_cast<std::size_t>(dim_ * dim_), Complex(0.0));
    for (const auto& blk : *blocks_) {
      const Index n = static_cast<Index>(blk.index.size());
      for (Index r = 0; r < n; ++r) {
        const Index k = blk.index[r];
        if (k % dim_ != k / dim_) continue;
        for (Index c = 0; c < n; ++c) tr[blk.index[c]] += blk.s(r, c);
      }
    }
    for (Index k = 0; k < dim_ * dim_; ++k) {
      const double expect = (k % dim_ == k / dim_) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(tr[k] - expect));
    }
    return worst;
  }
  for (Index n = 0; n < dim_; ++n) {
    for (Index m = 0; m < dim_; ++m) {
      Operator x = Operator::Zero(dim_, dim_);
      x(m, n) = 1.0;
      const double expect = m == n ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(apply(x).trace() - expect));
    }
  }
  return worst;
}

Complex Channel::goal_overlap(const Operator& goal) const {
  if (goal.rows() != dim_ || goal.cols() != dim_) throw std::invalid_argument("goal has the wrong dimension");
  Complex sum = 0.0;
  if (kind_ == Kind::kBlocks) {
    Operator u = goal;
    if (phase_.size() > 0) {
      // exp(iGt) on the output side is absorbed into the goal columns
      for (Index a = 0; a < dim_; ++a) u.row(a) *= std::conj(phase_(a));
    }
    for (const auto& blk : *blocks_) {
      const Index n = static_cast<Index>(blk.index.size());
      // out element (a,b), in element (m,n): conj(u_{am}) u_{bn}
      for (Index c = 0; c < n; ++c) {
        const Index kin = blk.index[c];
        const Index mi = kin % dim_, ni = kin / dim_;
        for (Index r = 0; r < n; ++r) {
          const Index kout = blk.index[r];
          const Index a = kout % dim_, b = kout / dim_;
          sum += std::conj(u(a, mi)) * u(b, ni) * blk.s(r, c);
        }
      }
    }
    return sum;
  }
  for (Index n = 0; n < dim_; ++n) {
    for (Index m = 0; m < dim_; ++m) {
      Operator x = Operator::Zero(dim_, dim_);
      x(m, n) = 1.0;
      sum += goal.col(m).dot(apply(x) * goal.col(n));
    }
  }
  return sum;
}

Index Channel::largest_block() const {
  Index best = 0;
  if (blocks_) {
    for (const auto& blk : *blocks_) best = std::max(best, static_cast<Index>(blk.index.size()));
  }
  return best;
}

}  // namespace ntoffoli
