// Copyright 2026 The polarrec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <initializer_list>
#include <vector>

#include "polar/scalar.hpp"

namespace polar {

// Dense exact vectors and matrices over Q(sqrt5). Dimensions are tiny
// (root-system ranks), so everything is plain row-major storage.

struct QVector {
  std::vector<ScalarQ5> c;

  QVector() = default;
  explicit QVector(int dim) : c(static_cast<size_t>(dim)) {}
  QVector(std::initializer_list<ScalarQ5> xs) : c(xs) {}

  int dim() const { return static_cast<int>(c.size()); }
  ScalarQ5& operator[](int i) { return c[static_cast<size_t>(i)]; }
  const ScalarQ5& operator[](int i) const { return c[static_cast<size_t>(i)]; }
  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
};

bool operator==(const QVector& u, const QVector& v);
inline bool operator!=(const QVector& u, const QVector& v) { return !(u == v); }
// Lexicographic order on coordinates (total, exact); used to sort roots.
bool operator<(const QVector& u, const QVector& v);

QVector operator+(const QVector& u, const QVector& v);
QVector operator-(const QVector& u, const QVector& v);
QVector operator*(const ScalarQ5& s, const QVector& v);

// Standard dot product.
ScalarQ5 dot(const QVector& u, const QVector& v);

struct QMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<ScalarQ5> m;

  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), m(static_cast<size_t>(r) * c) {}
  static QMatrix identity(int n);

  ScalarQ5& at(int i, int j) { return m[static_cast<size_t>(i) * cols + j]; }
  const ScalarQ5& at(int i, int j) const {
    return m[static_cast<size_t>(i) * cols + j];
  }

  QVector apply(const QVector& v) const;
  // Exact inverse by Gauss-Jordan elimination; throws on a singular matrix.
  QMatrix inverse() const;
};

bool operator==(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);

// Bilinear form value x^T G y for a symmetric Gram matrix G.
ScalarQ5 form_value(const QMatrix& gram, const QVector& x, const QVector& y);

// Solve G x = rhs exactly (G invertible).
QVector solve(const QMatrix& gram, const QVector& rhs);

// Orthogonal reflection of v in the hyperplane normal to root, standard
// inner product: v - 2<v,root>/<root,root> * root. Applying twice is the
// identity. Throws on a zero root.
QVector reflect(const QVector& v, const QVector& root);

// Same reflection with respect to the bilinear form given by gram.
QVector reflect_form(const QVector& v, const QVector& root, const QMatrix& gram);

}  // namespace polar
