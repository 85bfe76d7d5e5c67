#include "mwtree/block_matrix.hpp"

#include "mwtree/errors.hpp"

namespace mwtree {

BlockMatrix::BlockMatrix(std::vector<int> row_ids, std::vector<int> col_ids, int block_size)
    : row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)),
      s_(block_size),
      data_(static_cast<int>(row_ids_.size()) * block_size,
            static_cast<int>(col_ids_.size()) * block_size) {}

Matrix BlockMatrix::block(int bi, int bj) const {
    return data_.submatrix(bi * s_, bj * s_, s_, s_);
}

void BlockMatrix::set_block(int bi, int bj, const Matrix& b) {
    data_.set_submatrix(bi * s_, bj * s_, b);
}

void BlockMatrix::add_block(int bi, int bj, const Matrix& b) {
    data_.add_submatrix(bi * s_, bj * s_, b);
}

int BlockMatrix::row_position(int id) const {
    for (int i = 0; i < block_rows(); ++i)
        if (row_ids_[i] == id) return i;
    throw UnknownVertex(id);
}

int BlockMatrix::col_position(int id) const {
    for (int j = 0; j < block_cols(); ++j)
        if (col_ids_[j] == id) return j;
    throw UnknownVertex(id);
}

Matrix BlockMatrix::block_of(int row_id, int col_id) const {
    return block(row_position(row_id), col_position(col_id));
}

BlockMatrix BlockMatrix::reordered(const std::vector<int>& new_row_ids,
                                   const std::vector<int>& new_col_ids) const {
    if (new_row_ids.size() != row_ids_.size() || new_col_ids.size() != col_ids_.size())
        throw Error("reordered: id lists must be permutations of the current ids");
    BlockMatrix out(new_row_ids, new_col_ids, s_);
    for (int i = 0; i < out.block_rows(); ++i) {
        const int oi = row_position(new_row_ids[i]);
        for (int j = 0; j < out.block_cols(); ++j) {
            const int oj = col_position(new_col_ids[j]);
            out.set_block(i, j, block(oi, oj));
        }
    }
    return out;
}

} // namespace mwtree
