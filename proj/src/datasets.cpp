#include "hkan/datasets.hpp"

#include "hkan/errors.hpp"
#include "hkan/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <system_error>

namespace hkan {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_cell(const std::string& cell, std::size_t row) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("row " + std::to_string(row) + ": non-numeric cell '" + cell + "'");
    if (!std::isfinite(value))
        throw ParseError("row " + std::to_string(row) + ": non-finite cell '" + cell + "'");
    return value;
}

std::string format_cell(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

double NormStats::norm_y(double v) const {
    const double range = y_max - y_min;
    return range > 0.0 ? (v - y_min) / range : 0.0;
}

double NormStats::denorm_y(double v) const { return y_min + v * (y_max - y_min); }

Dataset load_csv(const std::string& path, const std::string& target) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);

    std::string line;
    if (!std::getline(file, line)) throw EmptyDataset(path + " is empty");
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 2) throw DataError(path + " has fewer than 2 columns");

    std::size_t target_col = header.size() - 1;
    if (!target.empty()) {
        const auto it = std::find(header.begin(), header.end(), target);
        if (it == header.end())
            throw DataError("target column '" + target + "' not found in " + path);
        target_col = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<std::vector<double>> rows;
    std::size_t row_number = 1; // header is row 1
    while (std::getline(file, line)) {
        ++row_number;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_fields(line);
        if (cells.size() != header.size())
            throw ParseError("row " + std::to_string(row_number) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) row[c] = parse_cell(cells[c], row_number);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw EmptyDataset(path + " has a header but no data rows");

    Dataset ds;
    ds.source = path;
    const Eigen::Index n_inputs = static_cast<Eigen::Index>(header.size()) - 1;
    ds.X.resize(static_cast<Eigen::Index>(rows.size()), n_inputs);
    ds.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != target_col) ds.column_names.push_back(header[c]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Eigen::Index x_col = 0;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == target_col)
                ds.y(static_cast<Eigen::Index>(i)) = rows[i][c];
            else
                ds.X(static_cast<Eigen::Index>(i), x_col++) = rows[i][c];
        }
    }
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    if (ds.rows() == 0) throw EmptyDataset("refusing to write an empty dataset");
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);

    for (Eigen::Index c = 0; c < ds.cols(); ++c) {
        if (c > 0) file << ',';
        if (static_cast<std::size_t>(c) < ds.column_names.size())
            file << ds.column_names[static_cast<std::size_t>(c)];
        else
            file << "x" << (c + 1);
    }
    file << ",y\n";

    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        for (Eigen::Index c = 0; c < ds.cols(); ++c) file << format_cell(ds.X(i, c)) << ',';
        file << format_cell(ds.y(i)) << '\n';
    }
    if (!file) throw DataError("write to " + path + " failed");
}

NormStats fit_normalization(const Dataset& train) {
    if (train.rows() == 0) throw EmptyDataset("cannot fit normalization on an empty dataset");
    NormStats stats;
    stats.x_min = train.X.colwise().minCoeff().transpose();
    stats.x_max = train.X.colwise().maxCoeff().transpose();
    stats.y_min = train.y.minCoeff();
    stats.y_max = train.y.maxCoeff();
    return stats;
}

Eigen::MatrixXd normalize_inputs(const Eigen::MatrixXd& X, const NormStats& stats) {
    if (X.cols() != stats.x_min.size())
        throw DimensionMismatch("input width does not match normalization stats");
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const double range = stats.x_max(c) - stats.x_min(c);
        if (range > 0.0)
            out.col(c) = (X.col(c).array() - stats.x_min(c)) / range;
        else
            out.col(c).setZero();
    }
    return out;
}

Dataset apply_normalization(const Dataset& ds, const NormStats& stats) {
    Dataset out = ds;
    out.X = normalize_inputs(ds.X, stats);
    for (Eigen::Index i = 0; i < out.y.size(); ++i) out.y(i) = stats.norm_y(ds.y(i));
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw InvalidInput("train fraction must lie in (0, 1)");
    const Eigen::Index n = ds.rows();
    if (n < 2) throw InvalidInput("need at least 2 rows to split");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    RngStream rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(i + 1)]);

    Eigen::Index n_train = static_cast<Eigen::Index>(
        std::llround(static_cast<double>(n) * train_fraction));
    n_train = std::clamp<Eigen::Index>(n_train, 1, n - 1);

    auto take = [&](Eigen::Index begin, Eigen::Index count) {
        Dataset part;
        part.column_names = ds.column_names;
        part.source = ds.source;
        part.X.resize(count, ds.cols());
        part.y.resize(count);
        for (Eigen::Index i = 0; i < count; ++i) {
            const Eigen::Index src = order[static_cast<std::size_t>(begin + i)];
            part.X.row(i) = ds.X.row(src);
            part.y(i) = ds.y(src);
        }
        return part;
    };
    return {take(0, n_train), take(n_train, n - n_train)};
}

std::string to_string(TargetFn fn) {
    switch (fn) {
    case TargetFn::TF1: return "TF1";
    case TargetFn::TF2: return "TF2";
    case TargetFn::TF3: return "TF3";
    case TargetFn::TF4: return "TF4";
    case TargetFn::TF5: return "TF5";
    case TargetFn::TF5_5: return "TF5-5";
    }
    throw InvalidInput("unknown target function");
}

TargetFn target_fn_from_string(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "TF1") return TargetFn::TF1;
    if (upper == "TF2") return TargetFn::TF2;
    if (upper == "TF3") return TargetFn::TF3;
    if (upper == "TF4") return TargetFn::TF4;
    if (upper == "TF5") return TargetFn::TF5;
    if (upper == "TF5-5" || upper == "TF5_5") return TargetFn::TF5_5;
    throw ParseError("unknown target function: " + name);
}

namespace {

struct TfSpec {
    int dim;
    double lo;
    double hi;
    bool normalize;
    bool train_noise;
};

TfSpec tf_spec(TargetFn fn) {
    switch (fn) {
    case TargetFn::TF1: return {2, 0.0, 1.0, false, false};
    case TargetFn::TF2: return {2, 0.0, 1.0, false, true};
    case TargetFn::TF3: return {2, -500.0, 500.0, true, false};
    case TargetFn::TF4: return {10, -4.0, 4.0, true, false};
    case TargetFn::TF5: return {2, 0.0, std::numbers::pi, true, false};
    case TargetFn::TF5_5: return {5, 0.0, std::numbers::pi, true, false};
    }
    throw InvalidInput("unknown target function");
}

} // namespace

double tf_raw(TargetFn fn, const Eigen::RowVectorXd& x) {
    if (x.size() != tf_spec(fn).dim)
        throw DimensionMismatch(to_string(fn) + " takes " + std::to_string(tf_spec(fn).dim) +
                                " inputs, got " + std::to_string(x.size()));
    switch (fn) {
    case TargetFn::TF1: return (2.0 * x(0) - 1.0) * (2.0 * x(1) - 1.0);
    case TargetFn::TF2: {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < 2; ++i)
            acc += std::sin(20.0 * std::exp(x(i))) * x(i) * x(i);
        return acc;
    }
    case TargetFn::TF3: {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < 2; ++i) acc += x(i) * std::sin(std::sqrt(std::abs(x(i))));
        return -acc;
    }
    case TargetFn::TF4: {
        const double r = std::sqrt(x.squaredNorm());
        return 1.0 - std::cos(2.0 * std::numbers::pi * r) - 0.1 * r;
    }
    case TargetFn::TF5:
    case TargetFn::TF5_5: {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double k = static_cast<double>(i + 1);
            acc += std::sin(x(i)) *
                   std::pow(std::sin(k * x(i) * x(i) / std::numbers::pi), 20.0);
        }
        return -acc;
    }
    }
    throw InvalidInput("unknown target function");
}

namespace {

Dataset sample_tf(TargetFn fn, const TfSpec& spec, int n, RngStream& rng) {
    Dataset ds;
    ds.X.resize(n, spec.dim);
    ds.y.resize(n);
    for (int j = 0; j < spec.dim; ++j) ds.column_names.push_back("x" + std::to_string(j + 1));
    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        for (Eigen::Index j = 0; j < ds.cols(); ++j) ds.X(i, j) = rng.uniform(spec.lo, spec.hi);
        ds.y(i) = tf_raw(fn, ds.X.row(i));
    }
    return ds;
}

} // namespace

std::pair<Dataset, Dataset> gen_tf(TargetFn fn, int n_train, int n_test, std::uint64_t seed) {
    if (n_train < 1 || n_test < 1) throw InvalidInput("sample counts must be positive");
    const TfSpec spec = tf_spec(fn);
    RngStream rng(seed);

    Dataset train = sample_tf(fn, spec, n_train, rng);
    Dataset test = sample_tf(fn, spec, n_test, rng);
    train.source = to_string(fn) + ":train";
    test.source = to_string(fn) + ":test";

    if (spec.train_noise)
        for (Eigen::Index i = 0; i < train.rows(); ++i) train.y(i) += rng.uniform(-0.2, 0.2);

    if (spec.normalize) {
        NormStats stats;
        stats.x_min =
            train.X.colwise().minCoeff().cwiseMin(test.X.colwise().minCoeff()).transpose();
        stats.x_max =
            train.X.colwise().maxCoeff().cwiseMax(test.X.colwise().maxCoeff()).transpose();
        stats.y_min = std::min(train.y.minCoeff(), test.y.minCoeff());
        stats.y_max = std::max(train.y.maxCoeff(), test.y.maxCoeff());
        train = apply_normalization(train, stats);
        test = apply_normalization(test, stats);
    }
    return {train, test};
}

} // namespace hkan
