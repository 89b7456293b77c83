#include "mbqc/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace mbqc::gf2 {

BitVector BitVector::from_mask(std::uint64_t mask, std::size_t size) {
    if (size > 64) throw std::invalid_argument("BitVector::from_mask: size exceeds 64");
    BitVector v(size);
    if (size > 0) v._words[0] = size == 64 ? mask : mask & ((std::uint64_t{1} << size) - 1);
    return v;
}

void BitVector::set(std::size_t i, bool value) {
    auto const bit = std::uint64_t{1} << (i % 64);
    if (value) {
        _words[i / 64] |= bit;
    } else {
        _words[i / 64] &= ~bit;
    }
}

bool BitVector::any() const {
    for (auto w : _words) {
        if (w != 0) return true;
    }
    return false;
}

std::size_t BitVector::count() const {
    std::size_t total = 0;
    for (auto w : _words) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool BitVector::dot(BitVector const& other) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < _words.size(); ++i) acc ^= _words[i] & other._words[i];
    return std::popcount(acc) % 2 == 1;
}

std::uint64_t BitVector::to_mask() const {
    if (_size > 64) throw std::logic_error("BitVector::to_mask: size exceeds 64");
    return _words.empty() ? 0 : _words[0];
}

BitVector& BitVector::operator^=(BitVector const& other) {
    if (other._size != _size) throw std::invalid_argument("BitVector: size mismatch");
    for (std::size_t i = 0; i < _words.size(); ++i) _words[i] ^= other._words[i];
    return *this;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(_size);
    for (std::size_t i = 0; i < _size; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::vector<std::vector<int>> const& rows) {
    std::size_t const cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c] % 2 != 0);
    }
    return m;
}

bool BitMatrix::operator()(std::size_t r, std::size_t c) const {
    if (r >= rows() || c >= _cols) throw std::out_of_range("BitMatrix: index out of range");
    return _data[r].get(c);
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    if (r >= rows() || c >= _cols) throw std::out_of_range("BitMatrix: index out of range");
    _data[r].set(c, value);
}

BitVector BitMatrix::column(std::size_t c) const {
    BitVector v(rows());
    for (std::size_t r = 0; r < rows(); ++r) v.set(r, _data[r].get(c));
    return v;
}

void BitMatrix::set_labels(std::vector<std::size_t> row_labels, std::vector<std::size_t> col_labels) {
    if (row_labels.size() != rows() || col_labels.size() != _cols) {
        throw std::invalid_argument("BitMatrix::set_labels: label count does not match dimensions");
    }
    _row_labels = std::move(row_labels);
    _col_labels = std::move(col_labels);
}

bool BitMatrix::is_identity() const {
    if (rows() != _cols) return false;
    for (std::size_t r = 0; r < rows(); ++r) {
        if (_data[r].count() != 1 || !_data[r].get(r)) return false;
    }
    return true;
}

std::string BitMatrix::to_string() const {
    std::string s;
    for (auto const& r : _data) {
        s += r.to_string();
        s += '\n';
    }
    return s;
}

BitMatrix multiply(BitMatrix const& a, BitMatrix const& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("gf2::multiply: dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto& dst = out.row(r);
        auto const& src = a.row(r);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (src.get(k)) dst ^= b.row(k);
        }
    }
    return out;
}

BitVector multiply(BitMatrix const& a, BitVector const& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("gf2::multiply: dimension mismatch");
    BitVector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) out.set(r, a.row(r).dot(x));
    return out;
}

BitMatrix transpose(BitMatrix const& a) {
    BitMatrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (a.row(r).get(c)) t.set(c, r);
        }
    }
    if (!a.row_labels().empty()) t.set_labels(a.col_labels(), a.row_labels());
    return t;
}

namespace {

// Reduces `m` in place to reduced row echelon form over its first `pivot_cols`
// columns and returns the pivot column of each pivot row, in row order.
std::vector<std::size_t> reduce(BitMatrix& m, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && !m.row(sel).get(col)) ++sel;
        if (sel == m.rows()) continue;
        std::swap(m.row(sel), m.row(row));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != row && m.row(r).get(col)) m.row(r) ^= m.row(row);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(BitMatrix a) { return reduce(a, a.cols()).size(); }

std::optional<BitVector> solve(BitMatrix const& a, BitVector const& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("gf2::solve: dimension mismatch");
    std::size_t const n = a.cols();
    BitMatrix aug(a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (a.row(r).get(c)) aug.set(r, c);
        }
        if (b.get(r)) aug.set(r, n);
    }
    auto const pivots = reduce(aug, n);
    for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
        if (aug.row(r).get(n)) return std::nullopt;
    }
    BitVector x(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) x.set(pivots[r], aug.row(r).get(n));
    return x;
}

std::optional<BitMatrix> invert(BitMatrix const& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("gf2::invert: matrix is not square");
    std::size_t const n = a.rows();
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (a.row(r).get(c)) aug.set(r, c);
        }
        aug.set(r, n + r);
    }
    if (reduce(aug, n).size() != n) return std::nullopt;
    BitMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (aug.row(r).get(n + c)) inv.set(r, c);
        }
    }
    if (!a.row_labels().empty()) inv.set_labels(a.col_labels(), a.row_labels());
    return inv;
}

}  // namespace mbqc::gf2
