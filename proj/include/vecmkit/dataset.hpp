#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecmkit/error.hpp"

namespace vecmkit {

/// One named annual series. Periods are integer year labels, strictly
/// increasing with a constant step; values has the same length.
struct TimeSeries {
    std::string name;
    std::vector<int> periods;
    std::vector<double> values;

    std::size_t length() const { return values.size(); }

    /// Throws Error if the invariants above do not hold.
    void validate() const;
};

/// Aligned multivariate panel: every series shares the same periods.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<TimeSeries> series);

    int T() const { return series_.empty() ? 0 : static_cast<int>(series_[0].length()); }
    int K() const { return static_cast<int>(series_.size()); }

    const std::vector<int>& periods() const;
    const std::vector<TimeSeries>& series() const { return series_; }
    const TimeSeries& series(int i) const { return series_.at(static_cast<std::size_t>(i)); }
    const TimeSeries& series(const std::string& name) const;
    bool has(const std::string& name) const;
    std::vector<std::string> names() const;

    /// T x K value matrix, columns in series order.
    Eigen::MatrixXd matrix() const;

private:
    std::vector<TimeSeries> series_;
};

enum class Transform { level, first_difference, log, log_difference };

Transform parse_transform(const std::string& text);
std::string to_string(Transform t);

struct LoadResult {
    Dataset dataset;
    /// 1-based file line numbers of rows dropped because a value cell was
    /// empty, paired with the row's period label.
    std::vector<std::pair<int, int>> incomplete_rows;
};

/// Parse a comma-delimited file with a header row. The date column must hold
/// integers; every other column becomes a series. Rows with empty value cells
/// are dropped and reported in the result; an unparseable cell, a duplicate
/// period, or a gap left by a dropped interior row is an error.
LoadResult load_csv(const std::string& path, const std::string& date_column);

/// Inverse of load_csv for valid datasets; doubles are written in shortest
/// round-trip form so load_csv(write_csv(d)) == d exactly.
void write_csv(const Dataset& d, const std::string& path,
               const std::string& date_column = "year");

/// d-th iterated first difference. d = 0 returns the input unchanged.
TimeSeries difference(const TimeSeries& s, int d);

/// Backshift: lag(s, k) at period t holds s at t - k.
TimeSeries lag(const TimeSeries& s, int k);

/// Apply one transform per variable (specs parallel to d.series()) and
/// truncate everything to the common overlapping periods.
Dataset align(const Dataset& d, const std::vector<Transform>& specs);

/// Keep only periods within [start, end] (either bound optional).
Dataset restrict_sample(const Dataset& d, std::optional<int> start,
                        std::optional<int> end);

/// Reorder/subset columns by name; errors on unknown names.
Dataset select_variables(const Dataset& d, const std::vector<std::string>& names);

} // namespace vecmkit
