#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uqsg {

/// Moment coefficients u_hat[s][i][j] for every cell j, state s and order i.
///
/// Storage is cell-major so that the (states x orders) block of a cell is
/// contiguous; coeffs(j, s) is the order vector of one state in one cell.
class MomentField {
public:
    MomentField() = default;
    MomentField(int cells, int states, int order)
        : cells_(cells), states_(states), order_(order),
          data_(static_cast<size_t>(cells) * states * (order + 1), 0.0) {}

    int cells() const { return cells_; }
    int states() const { return states_; }
    int order() const { return order_; }
    int orders() const { return order_ + 1; }
    size_t block_size() const { return static_cast<size_t>(states_) * orders(); }

    double& operator()(int s, int i, int j) { return data_[offset(j) + s * orders() + i]; }
    double operator()(int s, int i, int j) const { return data_[offset(j) + s * orders() + i]; }

    std::span<double> coeffs(int j, int s) {
        return {data_.data() + offset(j) + static_cast<size_t>(s) * orders(),
                static_cast<size_t>(orders())};
    }
    std::span<const double> coeffs(int j, int s) const {
        return {data_.data() + offset(j) + static_cast<size_t>(s) * orders(),
                static_cast<size_t>(orders())};
    }
    /// All states of cell j, state-major.
    std::span<double> cell(int j) { return {data_.data() + offset(j), block_size()}; }
    std::span<const double> cell(int j) const { return {data_.data() + offset(j), block_size()}; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    bool operator==(const MomentField& other) const = default;

private:
    size_t offset(int j) const { return static_cast<size_t>(j) * block_size(); }

    int cells_ = 0;
    int states_ = 0;
    int order_ = 0;
    std::vector<double> data_;
};

}  // namespace uqsg
