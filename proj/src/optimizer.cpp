#include "gainadapt/optimizer.hpp"

#include <stdexcept>

namespace gainadapt {

ChangeRate change_rate_from_budget(double delta_g, double m, double mu_r) {
    if (!(delta_g > 0.0)) throw std::invalid_argument("change rate: gain budget must be > 0");
    if (!(m > 0.0)) throw std::invalid_argument("change rate: submovement count must be > 0");
    if (!(mu_r > 0.0)) throw std::invalid_argument("change rate: mean error must be > 0");
    return ChangeRate{delta_g / (m * mu_r)};
}

UpdateBatch compute_deltas(const std::vector<SubmovementUpdate>& submovements, ChangeRate rate) {
    if (rate.c < 0.0) throw std::invalid_argument("optimizer: change rate must be >= 0");

    UpdateBatch batch;
    if (submovements.empty()) return batch;

    const std::size_t bins = submovements.front().occupancy.size();
    for (const SubmovementUpdate& s : submovements)
        if (s.occupancy.size() != bins)
            throw std::invalid_argument("optimizer: occupancy length mismatch");

    batch.deltas.assign(submovements.size(), std::vector<double>(bins, 0.0));
    batch.claimed.assign(bins, 0);

    // Latest submovement first: each bin takes the delta of the most recent
    // submovement whose speeds touched it.
    for (std::size_t i = submovements.size(); i-- > 0;) {
        const SubmovementUpdate& s = submovements[i];
        for (std::size_t j = 0; j < bins; ++j) {
            if (s.occupancy[j] && !batch.claimed[j]) {
                batch.deltas[i][j] = rate.c * s.R_mm;
                batch.claimed[j] = 1;
            }
        }
    }
    return batch;
}

void apply_update(GainTable& table, const UpdateBatch& batch) {
    if (batch.deltas.empty()) return;
    if (batch.bins() > table.size()) {
        if (!table.auto_grow) throw std::invalid_argument("optimizer: batch wider than gain table");
        table.grow_to(batch.bins());
    }
    if (batch.bins() != table.size())
        throw std::invalid_argument("optimizer: batch width does not match gain table");

    for (const std::vector<double>& d : batch.deltas)
        for (std::size_t j = 0; j < d.size(); ++j) table.gains()[j] += d[j];
    table.clamp_floor();
}

}  // namespace gainadapt
