#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "snl/error.hpp"

namespace snl {

template <typename Payload>
struct Envelope {
  int from = 0;
  int to = 0;
  Payload payload;
};

// Synchronous message network restricted to the edges of a graph.
//
// Senders post to an outbox; deliver() is the round barrier that moves every
// outbox message into its receiver's inbox, ordered by sender index. Sending
// along a non-edge or to oneself throws Error(Network): nothing is dropped
// silently. Every transmission is logged per ordered pair.
template <typename Payload>
class SimulatedNetwork {
 public:
  explicit SimulatedNetwork(std::vector<std::vector<int>> neighbors)
      : neighbors_(std::move(neighbors)),
        inbox_(neighbors_.size()),
        pair_messages_(neighbors_.size() * neighbors_.size(), 0) {}

  int nodes() const { return static_cast<int>(neighbors_.size()); }
  const std::vector<int>& neighbors(int node) const { return neighbors_.at(node); }

  bool is_edge(int a, int b) const {
    const auto& nb = neighbors_.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  void send(int from, int to, Payload payload, std::size_t bytes) {
    if (from == to || !is_edge(from, to)) {
      fail(ErrorKind::Network,
           "send along non-edge " + std::to_string(from) + " -> " + std::to_string(to));
    }
    outbox_.push_back({from, to, std::move(payload)});
    pair_messages_[index(from, to)] += 1;
    round_messages_ += 1;
    total_messages_ += 1;
    total_bytes_ += bytes;
  }

  // Round barrier. Returns the number of messages delivered.
  std::size_t deliver() {
    std::stable_sort(outbox_.begin(), outbox_.end(),
                     [](const auto& a, const auto& b) { return a.from < b.from; });
    const std::size_t count = outbox_.size();
    for (auto& env : outbox_) inbox_[env.to].push_back(std::move(env));
    outbox_.clear();
    rounds_ += 1;
    round_messages_ = 0;
    return count;
  }

  std::vector<Envelope<Payload>> receive(int node) {
    std::vector<Envelope<Payload>> out;
    out.swap(inbox_.at(node));
    return out;
  }

  std::size_t rounds() const { return rounds_; }
  std::size_t total_messages() const { return total_messages_; }
  std::size_t total_bytes() const { return total_bytes_; }
  std::size_t pair_messages(int from, int to) const { return pair_messages_[index(from, to)]; }

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * neighbors_.size() + static_cast<std::size_t>(b);
  }

  std::vector<std::vector<int>> neighbors_;
  std::vector<Envelope<Payload>> outbox_;
  std::vector<std::vector<Envelope<Payload>>> inbox_;
  std::vector<std::size_t> pair_messages_;
  std::size_t rounds_ = 0;
  std::size_t round_messages_ = 0;
  std::size_t total_messages_ = 0;
  std::size_t total_bytes_ = 0;
};

}  // namespace snl
