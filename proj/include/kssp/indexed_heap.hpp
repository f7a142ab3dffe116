// Binary min-heap over dense integer ids with decrease-key. Holds at most one
// entry per id.
#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

namespace kssp {

template <typename Key>
class IndexedHeap {
 public:
  using Id = std::uint32_t;

  IndexedHeap() = default;
  explicit IndexedHeap(std::size_t capacity) { resize(capacity); }

  void resize(std::size_t capacity) {
    pos_.assign(capacity, kAbsent);
    heap_.clear();
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(Id id) const { return pos_[id] != kAbsent; }
  const Key& key(Id id) const { return heap_[pos_[id]].key; }
  Id top() const { return heap_.front().id; }
  const Key& top_key() const { return heap_.front().key; }

  void push(Id id, const Key& key) {
    assert(!contains(id));
    pos_[id] = static_cast<std::uint32_t>(heap_.size());
    heap_.push_back({key, id});
    sift_up(heap_.size() - 1);
  }

  /// Requires key <= the current key of id.
  void decrease(Id id, const Key& key) {
    const std::size_t i = pos_[id];
    heap_[i].key = key;
    sift_up(i);
  }

  Id pop() {
    const Id id = heap_.front().id;
    pos_[id] = kAbsent;
    if (heap_.size() > 1) {
      heap_.front() = heap_.back();
      pos_[heap_.front().id] = 0;
      heap_.pop_back();
      sift_down(0);
    } else {
      heap_.pop_back();
    }
    return id;
  }

  std::vector<Id> ids() const {
    std::vector<Id> out;
    out.reserve(heap_.size());
    for (const auto& e : heap_) out.push_back(e.id);
    return out;
  }

  void clear() {
    for (const auto& e : heap_) pos_[e.id] = kAbsent;
    heap_.clear();
  }

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

  struct Entry {
    Key key;
    Id id;
  };

  void sift_up(std::size_t i) {
    Entry e = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!(e.key < heap_[parent].key)) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i].id] = static_cast<std::uint32_t>(i);
      i = parent;
    }
    heap_[i] = e;
    pos_[e.id] = static_cast<std::uint32_t>(i);
  }

  void sift_down(std::size_t i) {
    Entry e = heap_[i];
    const std::size_t n = heap_.size();
    while (true) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && heap_[child + 1].key < heap_[child].key) ++child;
      if (!(heap_[child].key < e.key)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i].id] = static_cast<std::uint32_t>(i);
      i = child;
    }
    heap_[i] = e;
    pos_[e.id] = static_cast<std::uint32_t>(i);
  }

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace kssp
