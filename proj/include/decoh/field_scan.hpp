#pragma once

// Magnetic-field sweeps of the t -> 0 decoherence rate: adaptive grid,
// suppression-window detection and golden-section refinement of minima.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "decoh/decoherence.hpp"
#include "decoh/errors.hpp"
#include "decoh/golden_section.hpp"
#include "decoh/parallel.hpp"
#include "decoh/scattering.hpp"

namespace decoh {

struct ScanRow {
    double field = 0;  // G
    ComplexScatteringLength a_a;
    ComplexScatteringLength a_b;
    double delta_abs = 0;  // m
    double rate = 0;       // s^-1, |first-order rate|
    double zeta0 = 0;      // s^-1
};

struct SkippedPoint {
    double field = 0;
    std::string state;
    std::size_t resonance_index = 0;
};

struct ScanOptions {
    double eta0 = 1.0;
    unsigned refine_depth = 12;
    double delta_change = 0.1;   // refine if |delta_abs| changes by more than this fraction
    double rate_ratio = 10.0;    // refine if neighboring rates differ by more than this factor
    unsigned threads = 0;        // 0: default_thread_count()
};

struct ScanResult {
    std::vector<ScanRow> rows;  // sorted by field
    std::vector<SkippedPoint> skipped;
};

struct SuppressionWindow {
    double field_lo = 0;
    double field_hi = 0;
    double min_rate = 0;
    double argmin_field = 0;
};

/// Rate at a single field; throws SingularityError from model evaluation.
inline ScanRow evaluate_scan_point(const GasParameters& gas, const StateScatteringModel& model_a,
                                   const StateScatteringModel& model_b, double field, double eta0) {
    ScanRow row;
    row.field = field;
    row.a_a = evaluate_model(model_a, field);
    row.a_b = evaluate_model(model_b, field);
    row.delta_abs = std::sqrt(squared_difference(row.a_a, row.a_b));
    row.rate = first_order_rate(gas, row.a_a, row.a_b, eta0);
    row.zeta0 = coefficients(gas, row.a_a, row.a_b).zeta0;
    return row;
}

namespace detail {

struct ScanSample {
    double field = 0;
    std::optional<ScanRow> row;
    std::optional<SkippedPoint> skip;
    unsigned depth = 0;  // refinement depth of the interval to the right
};

inline ScanSample sample_point(const GasParameters& gas, const StateScatteringModel& model_a,
                               const StateScatteringModel& model_b, double field, double eta0) {
    ScanSample s;
    s.field = field;
    try {
        s.row = evaluate_scan_point(gas, model_a, model_b, field, eta0);
    } catch (const SingularityError& e) {
        // Which model failed is recovered by re-evaluating model a alone.
        std::string state = model_b.label;
        try {
            (void)evaluate_model(model_a, field);
        } catch (const SingularityError&) {
            state = model_a.label;
        }
        s.skip = SkippedPoint{field, state, e.resonance_index()};
    }
    return s;
}

inline bool needs_refinement(const ScanRow& l, const ScanRow& r, const ScanOptions& opt) {
    const double dmax = std::max(l.delta_abs, r.delta_abs);
    if (std::abs(l.delta_abs - r.delta_abs) > opt.delta_change * dmax) return true;
    const double hi = std::max(l.rate, r.rate);
    const double lo = std::min(l.rate, r.rate);
    return hi > opt.rate_ratio * lo;
}

}  // namespace detail

/// Uniform base grid plus midpoint refinement wherever neighbors differ by
/// more than the configured thresholds or flank a local rate minimum, down to
/// refine_depth halvings.
inline ScanResult scan(const GasParameters& gas, const StateScatteringModel& model_a,
                       const StateScatteringModel& model_b, double field_lo, double field_hi,
                       std::size_t base_points, const ScanOptions& opt = {}) {
    if (!(field_lo < field_hi)) throw GridError("scan requires field_lo < field_hi");
    if (base_points < 16) throw GridError("scan requires at least 16 base points");
    const unsigned threads = opt.threads ? opt.threads : default_thread_count();

    std::vector<detail::ScanSample> samples(base_points);
    const double step = (field_hi - field_lo) / static_cast<double>(base_points - 1);
    parallel_for(base_points, threads, [&](std::size_t i) {
        const double b = i + 1 == base_points ? field_hi : field_lo + step * static_cast<double>(i);
        samples[i] = detail::sample_point(gas, model_a, model_b, b, opt.eta0);
    });

    for (unsigned level = 0; level < opt.refine_depth; ++level) {
        // A dip between two samples of similar rate passes the neighbor tests,
        // so both intervals around every strict local minimum are split as well.
        std::vector<bool> at_minimum(samples.size(), false);
        for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
            const auto &l = samples[i - 1], &m = samples[i], &r = samples[i + 1];
            if (!l.row || !m.row || !r.row) continue;
            const double lo = l.row->rate, mid = m.row->rate, hi = r.row->rate;
            // a tie on one side still counts, so symmetric pairs around a dip are kept
            at_minimum[i] = (mid < lo && mid <= hi) || (mid <= lo && mid < hi);
        }
        std::vector<std::size_t> split;  // left index of each interval to bisect
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            const auto& l = samples[i];
            const auto& r = samples[i + 1];
            if (l.depth != level || !l.row || !r.row) continue;
            if (at_minimum[i] || at_minimum[i + 1] || detail::needs_refinement(*l.row, *r.row, opt))
                split.push_back(i);
        }
        if (split.empty()) break;
        std::vector<detail::ScanSample> mids(split.size());
        parallel_for(split.size(), threads, [&](std::size_t j) {
            const double b = 0.5 * (samples[split[j]].field + samples[split[j] + 1].field);
            mids[j] = detail::sample_point(gas, model_a, model_b, b, opt.eta0);
            mids[j].depth = level + 1;
        });
        std::vector<detail::ScanSample> merged;
        merged.reserve(samples.size() + mids.size());
        std::size_t j = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            merged.push_back(samples[i]);
            if (j < split.size() && split[j] == i) {
                merged.back().depth = level + 1;
                merged.push_back(mids[j++]);
            }
        }
        samples = std::move(merged);
    }

    ScanResult out;
    for (auto& s : samples) {
        if (s.row) out.rows.push_back(*s.row);
        else if (s.skip) out.skipped.push_back(*s.skip);
    }
    return out;
}

struct Bracket {
    double left = 0, middle = 0, right = 0;
};

/// Golden-section refinement of a rate minimum down to 1e-6 of the bracket width.
inline Minimum<double> refine_minimum(const GasParameters& gas, const StateScatteringModel& model_a,
                                      const StateScatteringModel& model_b, const Bracket& bracket,
                                      double eta0 = 1.0) {
    auto rate = [&](double b) {
        return first_order_rate(gas, evaluate_model(model_a, b), evaluate_model(model_b, b), eta0);
    };
    return golden_section_minimize(rate, bracket.left, bracket.middle, bracket.right,
                                   1e-6 * (bracket.right - bracket.left));
}

inline double median_rate(const std::vector<ScanRow>& rows) {
    if (rows.empty()) return 0;
    std::vector<double> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.push_back(row.rate);
    const auto mid = r.begin() + static_cast<std::ptrdiff_t>(r.size() / 2);
    std::nth_element(r.begin(), mid, r.end());
    if (r.size() % 2) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(r.begin(), mid);
    return 0.5 * (lower + upper);
}

/// Interior runs of rows whose rate is below threshold_fraction * median rate,
/// each refined with golden-section search.
inline std::vector<SuppressionWindow> find_suppression_windows(const GasParameters& gas,
                                                               const StateScatteringModel& model_a,
                                                               const StateScatteringModel& model_b,
                                                               const std::vector<ScanRow>& rows,
                                                               double threshold_fraction = 1e-2,
                                                               double eta0 = 1.0) {
    std::vector<SuppressionWindow> out;
    const double threshold = threshold_fraction * median_rate(rows);
    if (!(threshold > 0)) return out;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (rows[i].rate >= threshold) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < rows.size() && rows[end].rate < threshold) ++end;
        if (i > 0 && end < rows.size()) {
            std::size_t best = i;
            for (std::size_t k = i; k < end; ++k)
                if (rows[k].rate < rows[best].rate) best = k;
            const Bracket br{rows[i - 1].field, rows[best].field, rows[end].field};
            const auto m = refine_minimum(gas, model_a, model_b, br, eta0);
            out.push_back({br.left, br.right, m.value, m.argmin});
        }
        i = end;
    }
    return out;
}

/// max rate / min rate; +inf when some rate is exactly zero, nullopt when all are.
inline std::optional<double> dynamic_range(const std::vector<ScanRow>& rows) {
    if (rows.empty()) throw GridError("dynamic_range needs at least one row");
    double lo = rows.front().rate, hi = rows.front().rate;
    for (const auto& r : rows) {
        lo = std::min(lo, r.rate);
        hi = std::max(hi, r.rate);
    }
    if (hi == 0) return std::nullopt;
    if (lo == 0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace decoh
