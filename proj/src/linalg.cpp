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

#include "polar/linalg.hpp"

namespace polar {

bool operator==(const QVector& u, const QVector& v) {
  if (u.dim() != v.dim()) return false;
  for (int i = 0; i < u.dim(); ++i)
    if (u[i] != v[i]) return false;
  return true;
}

bool operator<(const QVector& u, const QVector& v) {
  if (u.dim() != v.dim()) return u.dim() < v.dim();
  for (int i = 0; i < u.dim(); ++i) {
    if (u[i] < v[i]) return true;
    if (v[i] < u[i]) return false;
  }
  return false;
}

QVector operator+(const QVector& u, const QVector& v) {
  QVector r(u.dim());
  for (int i = 0; i < u.dim(); ++i) r[i] = u[i] + v[i];
  return r;
}

QVector operator-(const QVector& u, const QVector& v) {
  QVector r(u.dim());
  for (int i = 0; i < u.dim(); ++i) r[i] = u[i] - v[i];
  return r;
}

QVector operator*(const ScalarQ5& s, const QVector& v) {
  QVector r(v.dim());
  for (int i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

ScalarQ5 dot(const QVector& u, const QVector& v) {
  if (u.dim() != v.dim())
    throw Error(ErrorKind::InvalidData, "dot: dimension mismatch");
  ScalarQ5 s;
  for (int i = 0; i < u.dim(); ++i) s += u[i] * v[i];
  return s;
}

QMatrix QMatrix::identity(int n) {
  QMatrix id(n, n);
  for (int i = 0; i < n; ++i) id.at(i, i) = ScalarQ5(1);
  return id;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.dim() != cols)
    throw Error(ErrorKind::InvalidData, "QMatrix::apply: dimension mismatch");
  QVector r(rows);
  for (int i = 0; i < rows; ++i) {
    ScalarQ5 s;
    for (int j = 0; j < cols; ++j) s += at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

QMatrix QMatrix::inverse() const {
  if (rows != cols)
    throw Error(ErrorKind::InvalidData, "QMatrix::inverse: not square");
  const int n = rows;
  QMatrix a = *this;
  QMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0)
      throw Error(ErrorKind::InvalidData, "QMatrix::inverse: singular matrix");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(pivot, j), a.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    }
    const ScalarQ5 d = a.at(col, col);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) / d;
      inv.at(col, j) = inv.at(col, j) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      const ScalarQ5 f = a.at(r, col);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = a.at(r, j) - f * a.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.m == b.m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols != b.rows)
    throw Error(ErrorKind::InvalidData, "QMatrix product: dimension mismatch");
  QMatrix r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

ScalarQ5 form_value(const QMatrix& gram, const QVector& x, const QVector& y) {
  return dot(x, gram.apply(y));
}

QVector solve(const QMatrix& gram, const QVector& rhs) {
  return gram.inverse().apply(rhs);
}

QVector reflect(const QVector& v, const QVector& root) {
  if (root.is_zero())
    throw Error(ErrorKind::InvalidData, "reflect: zero root");
  const ScalarQ5 coeff = (ScalarQ5(2) * dot(v, root)) / dot(root, root);
  return v - coeff * root;
}

QVector reflect_form(const QVector& v, const QVector& root, const QMatrix& gram) {
  if (root.is_zero())
    throw Error(ErrorKind::InvalidData, "reflect: zero root");
  const ScalarQ5 coeff =
      (ScalarQ5(2) * form_value(gram, v, root)) / form_value(gram, root, root);
  return v - coeff * root;
}

}  // namespace polar
