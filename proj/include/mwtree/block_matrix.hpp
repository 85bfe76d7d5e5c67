#pragma once

#include "mwtree/matrix.hpp"

#include <vector>

namespace mwtree {

/// Dense matrix partitioned into s x s blocks. Row and column block positions
/// carry the ids (vertex or edge) they stand for, so reorderings stay explicit.
class BlockMatrix {
public:
    BlockMatrix() = default;
    BlockMatrix(std::vector<int> row_ids, std::vector<int> col_ids, int block_size);

    int block_size() const { return s_; }
    int block_rows() const { return static_cast<int>(row_ids_.size()); }
    int block_cols() const { return static_cast<int>(col_ids_.size()); }
    const std::vector<int>& row_ids() const { return row_ids_; }
    const std::vector<int>& col_ids() const { return col_ids_; }

    const Matrix& data() const { return data_; }
    Matrix& data() { return data_; }

    Matrix block(int bi, int bj) const;
    void set_block(int bi, int bj, const Matrix& b);
    void add_block(int bi, int bj, const Matrix& b);

    /// Block position of id in the row (column) index, or a throw if absent.
    int row_position(int id) const;
    int col_position(int id) const;
    Matrix block_of(int row_id, int col_id) const;

    /// Same matrix with blocks rearranged to the given id orders. The new ids
    /// must be a permutation of the current ones.
    BlockMatrix reordered(const std::vector<int>& new_row_ids,
                          const std::vector<int>& new_col_ids) const;

private:
    std::vector<int> row_ids_;
    std::vector<int> col_ids_;
    int s_ = 0;
    Matrix data_;
};

} // namespace mwtree
