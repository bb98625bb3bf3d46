#include "gainadapt/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gainadapt {

std::vector<double> gaussian_smooth(std::span<const double> series, double sigma) {
    std::vector<double> out(series.begin(), series.end());
    if (sigma <= 0.0 || series.size() <= 1) return out;

    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        double w = std::exp(-static_cast<double>(k * k) / (2.0 * sigma * sigma));
        kernel[k + radius] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;

    const auto n = static_cast<std::ptrdiff_t>(series.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
            std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(i + k, 0, n - 1);
            acc += kernel[k + radius] * series[j];
        }
        out[i] = acc;
    }
    return out;
}

namespace {

// Scratch buffers reused across calls; the pairing runs on plateau-compressed
// runs so equal-valued neighbors act as one vertex.
struct PairingScratch {
    std::vector<std::size_t> rep;    // leftmost sample index per run
    std::vector<double> val;         // run value
    std::vector<std::size_t> order;  // run ids sorted by (value, rep)
    std::vector<std::size_t> parent;
    std::vector<std::size_t> birth;  // run id of the basin's minimum
    std::vector<bool> processed;

    std::size_t find(std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
};

thread_local PairingScratch tl_scratch;

}  // namespace

void persistence_pairs(std::span<const double> series, PersistenceResult& out) {
    out.pairs.clear();
    if (series.empty()) throw std::invalid_argument("persistence: empty series");
    for (double v : series)
        if (!std::isfinite(v)) throw std::invalid_argument("persistence: non-finite value");

    PairingScratch& s = tl_scratch;
    s.rep.clear();
    s.val.clear();
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i == 0 || series[i] != series[i - 1]) {
            s.rep.push_back(i);
            s.val.push_back(series[i]);
        }
    }
    const std::size_t m = s.rep.size();

    s.order.resize(m);
    for (std::size_t i = 0; i < m; ++i) s.order[i] = i;
    std::sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) {
        if (s.val[a] != s.val[b]) return s.val[a] < s.val[b];
        return s.rep[a] < s.rep[b];
    });

    s.parent.resize(m);
    s.birth.resize(m);
    s.processed.assign(m, false);

    for (std::size_t oi = 0; oi < m; ++oi) {
        std::size_t r = s.order[oi];
        bool left = r > 0 && s.processed[r - 1];
        bool right = r + 1 < m && s.processed[r + 1];
        if (!left && !right) {
            s.parent[r] = r;
            s.birth[r] = r;
        } else if (left && right) {
            // The run is a saddle: two basins merge; the younger one dies here.
            std::size_t rl = s.find(r - 1);
            std::size_t rr = s.find(r + 1);
            std::size_t bl = s.birth[rl];
            std::size_t br = s.birth[rr];
            bool left_older = s.val[bl] != s.val[br] ? s.val[bl] < s.val[br] : s.rep[bl] < s.rep[br];
            std::size_t young = left_older ? br : bl;
            std::size_t older = left_older ? bl : br;
            out.pairs.push_back({s.rep[young], s.rep[r], s.val[r] - s.val[young]});
            s.parent[r] = rl;
            s.parent[rr] = rl;
            s.birth[rl] = older;
        } else {
            s.parent[r] = s.find(left ? r - 1 : r + 1);
        }
        s.processed[r] = true;
    }

    out.global_min_idx = s.rep[s.birth[s.find(0)]];
}

PersistenceResult persistence_pairs(std::span<const double> series) {
    PersistenceResult out;
    persistence_pairs(series, out);
    return out;
}

ExtremaSet persistence_extrema(std::span<const double> series, double threshold) {
    PersistenceResult pr = persistence_pairs(series);

    ExtremaSet ex;
    ex.minima.push_back(pr.global_min_idx);
    for (const PersistencePair& p : pr.pairs) {
        if (p.persistence >= threshold) {
            ex.minima.push_back(p.min_idx);
            ex.maxima.push_back(p.max_idx);
        }
    }
    std::sort(ex.minima.begin(), ex.minima.end());
    std::sort(ex.maxima.begin(), ex.maxima.end());

    double best = 0.0;
    for (std::size_t mi : ex.maxima) {
        if (ex.global_max_index == ExtremaSet::npos || series[mi] > best) {
            ex.global_max_index = mi;
            best = series[mi];
        }
    }
    return ex;
}

std::vector<SubmovementSpan> segment_submovements(std::span<const double> series,
                                                 double sigma, double threshold) {
    std::vector<double> smoothed = gaussian_smooth(series, sigma);
    ExtremaSet ex = persistence_extrema(smoothed, threshold);

    std::vector<SubmovementSpan> spans;
    if (ex.maxima.empty()) return spans;
    if (ex.minima.size() != ex.maxima.size() + 1)
        throw std::logic_error("segmentation: extrema do not alternate");

    for (std::size_t i = 0; i < ex.maxima.size(); ++i) {
        if (!(ex.minima[i] < ex.maxima[i] && ex.maxima[i] < ex.minima[i + 1]))
            throw std::logic_error("segmentation: extrema do not alternate");
        if (ex.maxima[i] < ex.global_max_index) continue;
        spans.push_back({ex.minima[i], ex.maxima[i], ex.minima[i + 1]});
    }
    return spans;
}

}  // namespace gainadapt
