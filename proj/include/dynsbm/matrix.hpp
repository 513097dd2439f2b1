#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace dynsbm {

// Dense square 0/1 matrix with flat row-major storage. Used for adjacency
// snapshots and cluster (co-membership) matrices; kept byte-sized so a
// full sequence at n ~ a few thousand stays cheap.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(int n, std::uint8_t fill = 0)
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  int n() const { return n_; }

  std::uint8_t operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::uint8_t& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }

  const std::uint8_t* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * n_;
  }

  void set_symmetric(int i, int j, std::uint8_t v) {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  bool operator==(const BinaryMatrix& o) const {
    return n_ == o.n_ && data_ == o.data_;
  }

  const std::vector<std::uint8_t>& data() const { return data_; }

 private:
  int n_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace dynsbm
