#include "vecmkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace vecmkit {

void TimeSeries::validate() const {
    if (values.empty()) {
        throw Error("series '" + name + "' is empty");
    }
    if (periods.size() != values.size()) {
        throw Error("series '" + name + "': periods and values differ in length");
    }
    if (periods.size() >= 2) {
        const int step = periods[1] - periods[0];
        if (step <= 0) {
            throw Error("series '" + name + "': periods not strictly increasing");
        }
        for (std::size_t i = 1; i < periods.size(); ++i) {
            if (periods[i] - periods[i - 1] != step) {
                throw Error("series '" + name + "': non-constant period step between " +
                            std::to_string(periods[i - 1]) + " and " + std::to_string(periods[i]));
            }
        }
    }
    for (double v : values) {
        if (std::isnan(v)) {
            throw Error("series '" + name + "' contains a missing value");
        }
    }
}

Dataset::Dataset(std::vector<TimeSeries> series) : series_(std::move(series)) {
    if (series_.empty()) {
        throw Error("dataset has no series");
    }
    std::set<std::string> seen;
    for (const auto& s : series_) {
        s.validate();
        if (!seen.insert(s.name).second) {
            throw Error("duplicate variable name '" + s.name + "'");
        }
        if (s.periods != series_[0].periods) {
            throw Error("series '" + s.name + "' periods differ from '" + series_[0].name + "'");
        }
    }
}

const std::vector<int>& Dataset::periods() const {
    if (series_.empty()) {
        throw Error("dataset has no series");
    }
    return series_[0].periods;
}

const TimeSeries& Dataset::series(const std::string& name) const {
    for (const auto& s : series_) {
        if (s.name == name) return s;
    }
    throw Error("unknown variable '" + name + "'");
}

bool Dataset::has(const std::string& name) const {
    return std::any_of(series_.begin(), series_.end(),
                       [&](const TimeSeries& s) { return s.name == name; });
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(series_.size());
    for (const auto& s : series_) out.push_back(s.name);
    return out;
}

Eigen::MatrixXd Dataset::matrix() const {
    Eigen::MatrixXd m(T(), K());
    for (int j = 0; j < K(); ++j) {
        for (int t = 0; t < T(); ++t) {
            m(t, j) = series_[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(t)];
        }
    }
    return m;
}

Transform parse_transform(const std::string& text) {
    if (text == "level") return Transform::level;
    if (text == "diff" || text == "first_difference") return Transform::first_difference;
    if (text == "log") return Transform::log;
    if (text == "logdiff" || text == "log_difference") return Transform::log_difference;
    throw InputError("unknown transform '" + text + "' (expected level|diff|log|logdiff)");
}

std::string to_string(Transform t) {
    switch (t) {
        case Transform::level: return "level";
        case Transform::first_difference: return "diff";
        case Transform::log: return "log";
        case Transform::log_difference: return "logdiff";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

LoadResult load_csv(const std::string& path, const std::string& date_column) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open input file: " + path);
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw InputError(path + ": empty file");
    }
    const std::vector<std::string> header = split_csv_line(line);
    int date_idx = -1;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == date_column) date_idx = static_cast<int>(j);
    }
    if (date_idx < 0) {
        throw InputError(path + ": date column '" + date_column + "' not found in header");
    }

    const std::size_t ncols = header.size();
    std::vector<int> periods;
    std::vector<std::vector<double>> cols(ncols);
    std::vector<std::pair<int, int>> incomplete;
    std::set<int> seen_periods;

    int row = 1; // header is row 1
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != ncols) {
            throw InputError(path + ": row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(ncols));
        }

        const std::string& ds = cells[static_cast<std::size_t>(date_idx)];
        int period = 0;
        auto pr = std::from_chars(ds.data(), ds.data() + ds.size(), period);
        if (pr.ec != std::errc() || pr.ptr != ds.data() + ds.size()) {
            throw InputError(path + ": row " + std::to_string(row) + ", column '" +
                             date_column + "': cannot parse '" + ds + "' as an integer period");
        }
        if (!seen_periods.insert(period).second) {
            throw InputError(path + ": duplicate period " + std::to_string(period) +
                             " at row " + std::to_string(row));
        }

        bool has_empty = false;
        std::vector<double> parsed(ncols, 0.0);
        for (std::size_t j = 0; j < ncols; ++j) {
            if (static_cast<int>(j) == date_idx) continue;
            const std::string& cell = cells[j];
            if (cell.empty()) {
                has_empty = true;
                continue;
            }
            double v = 0.0;
            auto vr = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (vr.ec != std::errc() || vr.ptr != cell.data() + cell.size()) {
                throw InputError(path + ": row " + std::to_string(row) + ", column '" +
                                 header[j] + "': cannot parse '" + cell + "' as a number");
            }
            parsed[j] = v;
        }
        if (has_empty) {
            incomplete.emplace_back(row, period);
            continue;
        }
        periods.push_back(period);
        for (std::size_t j = 0; j < ncols; ++j) {
            if (static_cast<int>(j) == date_idx) continue;
            cols[j].push_back(parsed[j]);
        }
    }

    if (periods.empty()) {
        throw InputError(path + ": no complete data rows");
    }

    std::vector<TimeSeries> series;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (static_cast<int>(j) == date_idx) continue;
        series.push_back(TimeSeries{header[j], periods, cols[j]});
    }

    try {
        Dataset d(std::move(series));
        return LoadResult{std::move(d), std::move(incomplete)};
    } catch (const Error& e) {
        if (!incomplete.empty()) {
            std::string dropped;
            for (const auto& [r, p] : incomplete) {
                if (!dropped.empty()) dropped += ", ";
                dropped += std::to_string(p) + " (row " + std::to_string(r) + ")";
            }
            throw InputError(path + ": " + e.what() +
                             "; note: rows with empty cells were dropped: " + dropped);
        }
        throw InputError(path + ": " + std::string(e.what()));
    }
}

void write_csv(const Dataset& d, const std::string& path, const std::string& date_column) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open output file: " + path);
    }
    out << date_column;
    for (const auto& s : d.series()) out << ',' << s.name;
    out << '\n';
    for (int t = 0; t < d.T(); ++t) {
        out << d.periods()[static_cast<std::size_t>(t)];
        for (const auto& s : d.series()) {
            out << ',' << format_double(s.values[static_cast<std::size_t>(t)]);
        }
        out << '\n';
    }
}

TimeSeries difference(const TimeSeries& s, int d) {
    if (d < 0) throw Error("difference: d must be non-negative");
    if (static_cast<std::size_t>(d) >= s.length()) {
        throw Error("difference: d = " + std::to_string(d) + " >= length(" + s.name + ") = " +
                    std::to_string(s.length()));
    }
    TimeSeries out = s;
    for (int i = 0; i < d; ++i) {
        std::vector<double> v(out.values.size() - 1);
        for (std::size_t t = 1; t < out.values.size(); ++t) {
            v[t - 1] = out.values[t] - out.values[t - 1];
        }
        out.values = std::move(v);
        out.periods.erase(out.periods.begin());
    }
    return out;
}

TimeSeries lag(const TimeSeries& s, int k) {
    if (k <= 0) throw Error("lag: k must be positive");
    if (static_cast<std::size_t>(k) >= s.length()) {
        throw Error("lag: k = " + std::to_string(k) + " >= length(" + s.name + ") = " +
                    std::to_string(s.length()));
    }
    TimeSeries out;
    out.name = s.name;
    out.periods.assign(s.periods.begin() + k, s.periods.end());
    out.values.assign(s.values.begin(), s.values.end() - k);
    return out;
}

namespace {

TimeSeries apply_transform(const TimeSeries& s, Transform t) {
    switch (t) {
        case Transform::level:
            return s;
        case Transform::first_difference:
            return difference(s, 1);
        case Transform::log:
        case Transform::log_difference: {
            TimeSeries out = s;
            for (std::size_t i = 0; i < out.values.size(); ++i) {
                if (out.values[i] <= 0.0) {
                    throw Error("log transform of '" + s.name + "': non-positive value at period " +
                                std::to_string(s.periods[i]));
                }
                out.values[i] = std::log(out.values[i]);
            }
            return t == Transform::log ? out : difference(out, 1);
        }
    }
    throw Error("unreachable transform");
}

} // namespace

Dataset align(const Dataset& d, const std::vector<Transform>& specs) {
    if (static_cast<int>(specs.size()) != d.K()) {
        throw Error("align: " + std::to_string(specs.size()) + " transforms for " +
                    std::to_string(d.K()) + " variables");
    }
    std::vector<TimeSeries> transformed;
    transformed.reserve(specs.size());
    for (int j = 0; j < d.K(); ++j) {
        transformed.push_back(apply_transform(d.series(j), specs[static_cast<std::size_t>(j)]));
    }
    int start = transformed[0].periods.front();
    int end = transformed[0].periods.back();
    for (const auto& s : transformed) {
        start = std::max(start, s.periods.front());
        end = std::min(end, s.periods.back());
    }
    if (start > end) {
        throw Error("align: no common overlapping periods");
    }
    for (auto& s : transformed) {
        std::vector<int> p;
        std::vector<double> v;
        for (std::size_t i = 0; i < s.periods.size(); ++i) {
            if (s.periods[i] >= start && s.periods[i] <= end) {
                p.push_back(s.periods[i]);
                v.push_back(s.values[i]);
            }
        }
        s.periods = std::move(p);
        s.values = std::move(v);
    }
    return Dataset(std::move(transformed));
}

Dataset restrict_sample(const Dataset& d, std::optional<int> start, std::optional<int> end) {
    std::vector<TimeSeries> out;
    for (const auto& s : d.series()) {
        TimeSeries r;
        r.name = s.name;
        for (std::size_t i = 0; i < s.periods.size(); ++i) {
            const int p = s.periods[i];
            if (start && p < *start) continue;
            if (end && p > *end) continue;
            r.periods.push_back(p);
            r.values.push_back(s.values[i]);
        }
        if (r.periods.empty()) {
            throw Error("sample window leaves no observations");
        }
        out.push_back(std::move(r));
    }
    return Dataset(std::move(out));
}

Dataset select_variables(const Dataset& d, const std::vector<std::string>& names) {
    if (names.empty()) return d;
    std::vector<TimeSeries> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        out.push_back(d.series(n)); // throws on unknown name
    }
    return Dataset(std::move(out));
}

} // namespace vecmkit
