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

#ifndef NTOFFOLI_CHANNEL_H_
#define NTOFFOLI_CHANNEL_H_

#include <functional>
#include <memory>
#include <vector>

#include "ntoffoli/evolution.h"
#include "ntoffoli/linalg.h"

namespace ntoffoli {

// Linear map on d x d operators. Three representations: conjugation by a
// unitary, an arbitrary callable, or Liouville-space blocks obtained by
// exponentiating a static generator one connected component at a time.
// Liouville vectors are column-major: element (a, b) sits at a + b d.
class Channel {
 public:
  using Map = std::function<Operator(const Operator&)>;

  static Channel unitary(Operator u);
  static Channel from_map(Index dim, Map map);
  // exp(L t) for a time-independent generator.
  static Channel from_generator(const StructuredGenerator& generator, double t);

  Index dim() const { return dim_; }
  Operator apply(const Operator& x) const;

  // x -> exp(iGt) C(x) exp(-iGt) for diagonal G.
  Channel rotated(const Operator& generator, double t) const;

  // max over m, n of |tr C(|m><n|) - delta_mn|
  double trace_defect() const;

  // sum over m, n of <u_m| C(|m><n|) |u_n>, u_k the k-th column of `goal`.
  Complex goal_overlap(const Operator& goal) const;

  std::size_t block_count() const { return blocks_ ? blocks_->size() : 0; }
  Index largest_block() const;

 private:
  struct Block {
    std::vector<Index> index;  // Liouville indices, ascending
    Operator s;                // dense exp(L_block t)
  };

  enum class Kind { kUnitary, kMap, kBlocks };

  Channel(Index dim, Kind kind) : dim_(dim), kind_(kind) {}

  Index dim_;
  Kind kind_;
  Operator unitary_;
  Map map_;
  std::shared_ptr<const std::vector<Block>> blocks_;
  Vector phase_;  // output conjugation exp(iGt), empty when absent
};

}  // namespace ntoffoli

#endif  // NTOFFOLI_CHANNEL_H_
