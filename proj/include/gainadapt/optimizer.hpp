#pragma once

#include <cstdint>
#include <vector>

#include "gainadapt/transfer.hpp"

namespace gainadapt {

/// Scale factor from aiming error (mm) to gain change, in 1/mm.
struct ChangeRate {
    double c = 5e-5;
};

/// Rate that spends a gain budget delta_g over m submovements at mean
/// absolute error mu_r (mm). All inputs must be positive.
ChangeRate change_rate_from_budget(double delta_g, double m, double mu_r);

/// One submovement's contribution to a trial's gain update.
struct SubmovementUpdate {
    double R_mm = 0.0;
    std::vector<std::uint8_t> occupancy;
};

/// Per-trial batch of bin deltas. Bins touched by several submovements are
/// claimed by the latest one; earlier submovements update only bins left
/// unclaimed. deltas[i][j] is submovement i's change to bin j.
struct UpdateBatch {
    std::vector<std::vector<double>> deltas;
    std::vector<std::uint8_t> claimed;

    std::size_t bins() const { return claimed.size(); }
};

/// Builds the batch for one trial's update-eligible submovements, in trial
/// order. All occupancy vectors must share one length.
UpdateBatch compute_deltas(const std::vector<SubmovementUpdate>& submovements, ChangeRate rate);

/// Adds the batch's deltas to the table, growing it first when the batch is
/// wider, then clamps gains at the table's floor.
void apply_update(GainTable& table, const UpdateBatch& batch);

}  // namespace gainadapt
