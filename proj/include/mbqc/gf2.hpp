#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mbqc::gf2 {

/// Packed vector over GF(2), 64 entries per word.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : _size{size}, _words((size + 63) / 64, 0) {}

    static BitVector from_mask(std::uint64_t mask, std::size_t size);

    [[nodiscard]] std::size_t size() const { return _size; }
    [[nodiscard]] bool get(std::size_t i) const { return (_words[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { _words[i / 64] ^= std::uint64_t{1} << (i % 64); }

    [[nodiscard]] bool any() const;
    [[nodiscard]] std::size_t count() const;
    /// Parity of the bitwise AND.
    [[nodiscard]] bool dot(BitVector const& other) const;
    /// Only valid when size() <= 64.
    [[nodiscard]] std::uint64_t to_mask() const;

    BitVector& operator^=(BitVector const& other);
    friend BitVector operator^(BitVector lhs, BitVector const& rhs) { return lhs ^= rhs; }
    friend bool operator==(BitVector const&, BitVector const&) = default;

    [[nodiscard]] std::string to_string() const;

private:
    std::size_t _size = 0;
    std::vector<std::uint64_t> _words;
};

/// Dense matrix over GF(2). Rows are packed bit vectors.
///
/// Optional row/column labels record which vertex each row or column stands
/// for when the matrix is carved out of an adjacency matrix.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : _cols{cols}, _data(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::vector<std::vector<int>> const& rows);

    [[nodiscard]] std::size_t rows() const { return _data.size(); }
    [[nodiscard]] std::size_t cols() const { return _cols; }

    [[nodiscard]] bool operator()(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value = true);

    [[nodiscard]] BitVector const& row(std::size_t r) const { return _data.at(r); }
    BitVector& row(std::size_t r) { return _data.at(r); }
    [[nodiscard]] BitVector column(std::size_t c) const;

    [[nodiscard]] std::vector<std::size_t> const& row_labels() const { return _row_labels; }
    [[nodiscard]] std::vector<std::size_t> const& col_labels() const { return _col_labels; }
    void set_labels(std::vector<std::size_t> row_labels, std::vector<std::size_t> col_labels);

    [[nodiscard]] bool is_identity() const;

    /// Entry-wise comparison; labels are ignored.
    friend bool operator==(BitMatrix const& a, BitMatrix const& b) { return a._cols == b._cols && a._data == b._data; }

    [[nodiscard]] std::string to_string() const;

private:
    std::size_t _cols = 0;
    std::vector<BitVector> _data;
    std::vector<std::size_t> _row_labels;
    std::vector<std::size_t> _col_labels;
};

/// Matrix product with XOR accumulation. Throws std::invalid_argument on a
/// dimension mismatch.
[[nodiscard]] BitMatrix multiply(BitMatrix const& a, BitMatrix const& b);
[[nodiscard]] BitVector multiply(BitMatrix const& a, BitVector const& x);

inline BitMatrix operator*(BitMatrix const& a, BitMatrix const& b) { return multiply(a, b); }
inline BitVector operator*(BitMatrix const& a, BitVector const& x) { return multiply(a, x); }

[[nodiscard]] BitMatrix transpose(BitMatrix const& a);

[[nodiscard]] std::size_t rank(BitMatrix a);

/// Some x with a * x = b, or nullopt when the system is inconsistent.
///
/// Elimination pivots on the lowest-index column with a nonzero entry at or
/// below the current row, taking the lowest such row. Free variables are set
/// to zero, so the returned solution is deterministic.
[[nodiscard]] std::optional<BitVector> solve(BitMatrix const& a, BitVector const& b);

/// Two-sided inverse, or nullopt when singular. Throws std::invalid_argument
/// for non-square input.
[[nodiscard]] std::optional<BitMatrix> invert(BitMatrix const& a);

}  // namespace mbqc::gf2
