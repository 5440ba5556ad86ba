#pragma once

// Word-keyed embedding tables and the vector operations used for
// representation-shift analysis. Templated on the scalar type; the file
// format and reports use double.

#include <cmath>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lexishot/error.hpp"

namespace lexishot {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Cosine similarity dot(u, v) / (|u| |v|). Throws std::invalid_argument on a
// size mismatch or empty input and std::domain_error when either vector is zero.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  if (u.size() != v.size() || u.size() == 0) throw std::invalid_argument("cosine: vectors differ in size or are empty");
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0)) throw std::domain_error("cosine: undefined for a zero vector");
  return u.dot(v.template cast<Scalar>()) / (nu * nv);
}

// 1 - cosine(u, v).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_distance(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  return typename DerivedA::Scalar(1) - cosine(u, v);
}

// Mean of a word's sub-token vectors, one token per column.
template <typename Derived>
Vector<typename Derived::Scalar> word_vector(const Eigen::MatrixBase<Derived>& token_columns) {
  if (token_columns.cols() == 0) throw std::invalid_argument("word_vector: no token vectors");
  return token_columns.rowwise().mean();
}

template <typename Scalar>
Vector<Scalar> word_vector(std::string_view word, std::span<const Vector<Scalar>> tokens) {
  if (tokens.empty()) throw std::invalid_argument("word_vector: no token vectors for '" + std::string(word) + "'");
  const Eigen::Index dim = tokens.front().size();
  Vector<Scalar> sum = Vector<Scalar>::Zero(dim);
  for (const auto& t : tokens) {
    if (t.size() != dim) throw std::invalid_argument("word_vector: dimension mismatch for '" + std::string(word) + "'");
    sum += t;
  }
  return sum / static_cast<Scalar>(tokens.size());
}

template <typename Scalar>
class BasicEmbeddingTable {
 public:
  using VectorType = Vector<Scalar>;

  explicit BasicEmbeddingTable(Eigen::Index dimension) : dimension_(dimension) {
    if (dimension <= 0) throw DataError("embedding dimension must be positive");
  }

  Eigen::Index dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }

  // Throws DataError on a wrong length, a non-finite component or a duplicate key.
  void insert(std::string key, VectorType v) {
    if (v.size() != dimension_) {
      throw DataError("vector for '" + key + "' has " + std::to_string(v.size()) + " components, expected " +
                      std::to_string(dimension_));
    }
    if (!v.allFinite()) throw DataError("vector for '" + key + "' has a NaN or infinite component");
    if (!entries_.emplace(key, std::move(v)).second) throw DataError("duplicate key '" + key + "'");
  }

  const VectorType* find(std::string_view key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, VectorType, std::less<>>& entries() const { return entries_; }

  void set_meta(std::string key, std::string value) {
    for (auto& [k, v] : meta_) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    meta_.emplace_back(std::move(key), std::move(value));
  }
  const std::vector<std::pair<std::string, std::string>>& meta() const { return meta_; }

 private:
  Eigen::Index dimension_;
  std::map<std::string, VectorType, std::less<>> entries_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

using EmbeddingTable = BasicEmbeddingTable<double>;

// Text format:
//   DIM <d>
//   META <key> <value>        (optional, any number)
//   <key><TAB><f1> <f2> … <fd>
EmbeddingTable parse_embedding_table(std::string_view content, const std::string& source = {});
EmbeddingTable load_embedding_file(const std::filesystem::path& path);
// Components are written with 17 significant digits.
std::string to_text(const EmbeddingTable& table);

}  // namespace lexishot
