#include "xplain/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xplain/errors.hpp"

namespace xplain {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_numeric(const std::string& text, const std::string& feature, std::size_t row) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw InputError("row " + std::to_string(row) + ": feature '" + feature +
                         "': cannot parse '" + text + "' as a number");
    }
    if (consumed != text.size() || !std::isfinite(value)) {
        throw InputError("row " + std::to_string(row) + ": feature '" + feature +
                         "': cannot parse '" + text + "' as a finite number");
    }
    return value;
}

} // namespace

Dataset load_dataset(const std::string& path, const FeatureSchema& schema) {
    if (schema.features.empty()) throw InputError("schema declares no features");
    if (schema.positive_label == schema.negative_label) {
        throw InputError("positive and negative labels must differ");
    }

    std::ifstream in(path);
    if (!in) throw InputError("cannot open dataset file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw InputError("dataset file '" + path + "' is empty");
    const auto header = split_csv_line(line);

    // map declared columns onto header positions
    std::vector<std::size_t> feature_col(schema.features.size());
    std::size_t label_col = 0;
    auto locate = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw InputError("dataset header is missing declared column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
        feature_col[f] = locate(schema.features[f].name);
    }
    label_col = locate(schema.label_column);

    Dataset ds;
    ds.schema = schema;
    for (auto& spec : ds.schema.features) spec.categories.clear();
    for (const auto& spec : schema.features) ds.column_names.push_back(spec.name);

    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue; // skip blank lines
        ++row_no;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw InputError("row " + std::to_string(row_no) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        }

        std::vector<double> point(schema.features.size());
        std::vector<RawValue> raw(schema.features.size());
        for (std::size_t f = 0; f < schema.features.size(); ++f) {
            const auto& text = cells[feature_col[f]];
            auto& spec = ds.schema.features[f];
            if (spec.kind == FeatureKind::Numeric) {
                point[f] = parse_numeric(text, spec.name, row_no);
                raw[f] = point[f];
            } else {
                auto it = std::find(spec.categories.begin(), spec.categories.end(), text);
                if (it == spec.categories.end()) {
                    spec.categories.push_back(text);
                    it = std::prev(spec.categories.end());
                }
                point[f] = static_cast<double>(it - spec.categories.begin());
                raw[f] = text;
            }
        }

        const auto& label_text = cells[label_col];
        if (label_text == schema.positive_label) {
            ds.labels.push_back(1);
        } else if (label_text == schema.negative_label) {
            ds.labels.push_back(0);
        } else {
            throw InputError("row " + std::to_string(row_no) + ": label '" + label_text +
                             "' is neither '" + schema.positive_label + "' nor '" +
                             schema.negative_label + "'");
        }
        ds.points.push_back(std::move(point));
        ds.raw_rows.push_back(std::move(raw));
    }

    if (ds.points.empty()) throw InputError("dataset file '" + path + "' has no data rows");
    return ds;
}

Dataset one_hot_encode(const Dataset& ds) {
    Dataset out;
    out.schema = ds.schema;
    out.labels = ds.labels;
    out.raw_rows = ds.raw_rows;
    out.encoded = true;

    for (const auto& spec : ds.schema.features) {
        if (spec.kind == FeatureKind::Numeric) {
            out.column_names.push_back(spec.name);
        } else {
            for (const auto& cat : spec.categories) {
                out.column_names.push_back(spec.name + "=" + cat);
            }
        }
    }

    out.points.reserve(ds.points.size());
    for (const auto& row : ds.points) {
        std::vector<double> enc;
        enc.reserve(out.column_names.size());
        for (std::size_t f = 0; f < ds.schema.features.size(); ++f) {
            const auto& spec = ds.schema.features[f];
            if (spec.kind == FeatureKind::Numeric) {
                enc.push_back(row[f]);
            } else {
                const auto idx = static_cast<std::size_t>(row[f]);
                for (std::size_t c = 0; c < spec.categories.size(); ++c) {
                    enc.push_back(c == idx ? 1.0 : 0.0);
                }
            }
        }
        out.points.push_back(std::move(enc));
    }
    return out;
}

StandardizeResult standardize(const Dataset& ds) {
    if (ds.points.empty()) throw InputError("cannot standardize an empty dataset");
    const std::size_t m = ds.rows();
    const std::size_t n = ds.cols();

    StandardizeResult res;
    res.data = ds;
    res.scaling.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        double mean = 0.0;
        for (const auto& row : ds.points) mean += row[j];
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (const auto& row : ds.points) {
            const double d = row[j] - mean;
            var += d * d;
        }
        var /= static_cast<double>(m);

        auto& sc = res.scaling[j];
        sc.mean = mean;
        if (var <= 0.0) {
            sc.stddev = 1.0;
            sc.zero_variance = true; // column passes through unchanged
            sc.mean = 0.0;
        } else {
            sc.stddev = std::sqrt(var);
        }
        for (auto& row : res.data.points) row[j] = (row[j] - sc.mean) / sc.stddev;
    }
    return res;
}

std::vector<double> apply_scaling(std::span<const double> x,
                                  const std::vector<FeatureScaling>& scaling) {
    if (x.size() != scaling.size()) {
        throw InputError("point dimension " + std::to_string(x.size()) +
                         " does not match scaling dimension " + std::to_string(scaling.size()));
    }
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - scaling[j].mean) / scaling[j].stddev;
    return out;
}

std::size_t max_variance_feature(const Dataset& ds) {
    if (ds.points.empty()) throw InputError("cannot compute variances of an empty dataset");
    const std::size_t m = ds.rows();
    const std::size_t n = ds.cols();
    std::size_t best = 0;
    double best_var = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double mean = 0.0;
        for (const auto& row : ds.points) mean += row[j];
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (const auto& row : ds.points) {
            const double d = row[j] - mean;
            var += d * d;
        }
        if (var > best_var) {
            best_var = var;
            best = j;
        }
    }
    return best;
}

double euclid_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InputError("euclid_distance: dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace xplain
