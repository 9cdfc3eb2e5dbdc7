#pragma once

#include "slecoset/errors.hpp"
#include "slecoset/linalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace slecoset {

/// Truncated irreducible quotient of a highest-weight module, given by its
/// Gram blocks.
///
/// Per block the pivot columns of the Gram matrix pick representatives B;
/// G_BB is then nonsingular (G is symmetric) and a vector v of the block has
/// quotient coordinates G_BB^{-1} (<b|v>)_{b in B}. Coordinates are ordered
/// block by block, blocks in the order given (grade-major).
template <class Key>
class GradedQuotient {
public:
  struct Block {
    int grade = 0;
    int weight = 0;
    std::vector<Key> keys;
    Matrix gram;
  };

  using Column = std::vector<std::pair<std::size_t, Rational>>;

  GradedQuotient(std::vector<Block> blocks, int max_grade, std::function<int(const Key&)> grade_of)
      : max_grade_(max_grade), grade_of_(std::move(grade_of)) {
    for (auto& block : blocks) {
      EchelonInfo info = echelon(block.gram);
      std::vector<std::size_t> all(block.keys.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      const std::size_t offset = grades_.size();
      if (info.rank > 0) {
        Matrix gbb = select(block.gram, info.pivot_columns, info.pivot_columns);
        Matrix proj = inverse(gbb) * select(block.gram, info.pivot_columns, all);
        for (std::size_t c = 0; c < block.keys.size(); ++c) {
          Column col;
          for (std::size_t r = 0; r < info.rank; ++r)
            if (!proj(r, c).is_zero()) col.emplace_back(offset + r, proj(r, c));
          columns_.emplace(block.keys[c], std::move(col));
        }
        for (std::size_t r = 0; r < info.rank; ++r) {
          grades_.push_back(block.grade);
          weights_.push_back(block.weight);
          representatives_.push_back(block.keys[info.pivot_columns[r]]);
        }
      } else {
        for (const auto& key : block.keys) columns_.emplace(key, Column{});
      }
      block_dims_.push_back({block.grade, block.weight, block.keys.size(), info.rank});
    }
  }

  struct BlockDims {
    int grade;
    int weight;
    std::size_t universal;
    std::size_t irreducible;
  };

  std::size_t dim() const { return grades_.size(); }
  int max_grade() const { return max_grade_; }
  int grade(std::size_t i) const { return grades_[i]; }
  int weight(std::size_t i) const { return weights_[i]; }
  const Key& representative(std::size_t i) const { return representatives_[i]; }
  const std::vector<BlockDims>& block_dims() const { return block_dims_; }

  /// Quotient coordinates of a single basis key; empty for keys above max_grade.
  const Column& column(const Key& key) const {
    static const Column empty;
    auto it = columns_.find(key);
    if (it != columns_.end()) return it->second;
    if (grade_of_(key) > max_grade_) return empty;
    throw TruncationError("basis key missing from quotient blocks");
  }

  /// Coordinates of v; components above max_grade are dropped (the
  /// truncation of grade-raising dynamics).
  std::vector<Rational> project(const SparseVector<Key>& v) const {
    std::vector<Rational> x(dim());
    for (const auto& [key, coef] : v)
      for (const auto& [i, p] : column(key)) x[i] += coef * p;
    return x;
  }

  /// Matrix of a grade-non-decreasing module operator on the truncation.
  template <class Op>
  Matrix operator_matrix(Op&& op) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      SparseVector<Key> image = op(SparseVector<Key>{{representatives_[j], Rational(1)}});
      std::vector<Rational> x = project(image);
      for (std::size_t i = 0; i < dim(); ++i) m(i, j) = x[i];
    }
    return m;
  }

private:
  int max_grade_;
  std::function<int(const Key&)> grade_of_;
  std::vector<int> grades_;
  std::vector<int> weights_;
  std::vector<Key> representatives_;
  std::map<Key, Column> columns_;
  std::vector<BlockDims> block_dims_;
};

}  // namespace slecoset
