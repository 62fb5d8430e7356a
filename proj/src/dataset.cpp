#include "phishml/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace phishml {

std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

const char* label_name(Label l) {
    return l == Label::Phishing ? "PHISHING" : "LEGITIMATE";
}

Label label_from_name(const std::string& name) {
    if (name == "PHISHING") return Label::Phishing;
    if (name == "LEGITIMATE") return Label::Legitimate;
    throw DataError("unknown class name: " + name);
}

int FeatureSchema::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == name) return static_cast<int>(i);
    return -1;
}

void FeatureSchema::validate() const {
    if (domains.size() != feature_names.size())
        throw DataError("schema domains/names arity mismatch");
    std::set<std::string> seen;
    for (const auto& name : feature_names) {
        if (name.empty()) throw DataError("schema contains an empty feature name");
        if (!seen.insert(name).second)
            throw DataError("duplicate feature name: " + name);
    }
    if (label_name.empty()) throw DataError("schema label name is empty");
    for (std::size_t i = 0; i < domains.size(); ++i) {
        if (!domains[i][0] && !domains[i][1] && !domains[i][2])
            throw DataError("feature " + feature_names[i] + " has an empty value domain");
    }
}

bool Dataset::labeled() const {
    for (const auto& row : rows)
        if (!row.label) return false;
    return true;
}

std::array<std::size_t, 2> Dataset::class_totals() const {
    std::array<std::size_t, 2> totals{0, 0};
    for (const auto& row : rows)
        if (row.label) ++totals[static_cast<std::size_t>(class_index(*row.label))];
    return totals;
}

Label Dataset::majority_class() const {
    const auto totals = class_totals();
    // Tie resolves to Phishing, the fail-safe verdict.
    return totals[1] > totals[0] ? Label::Legitimate : Label::Phishing;
}

void Dataset::validate() const {
    schema.validate();
    for (std::size_t tid = 0; tid < rows.size(); ++tid) {
        const auto& row = rows[tid];
        if (row.values.size() != schema.arity())
            throw DataError("row " + std::to_string(tid) + " has wrong arity");
        for (std::size_t f = 0; f < row.values.size(); ++f) {
            if (!domain_contains(schema.domains[f], row.values[f]))
                throw DataError("row " + std::to_string(tid) + ", column " +
                                schema.feature_names[f] + ": value outside domain");
        }
    }
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.schema = schema;
    out.rows.reserve(indices.size());
    for (std::size_t i : indices) out.rows.push_back(rows.at(i));
    return out;
}

std::uint64_t Dataset::fingerprint() const {
    Fnv1a h;
    for (const auto& name : schema.feature_names) h.update(name);
    h.update(schema.label_name);
    for (const auto& row : rows) {
        for (int v : row.values) h.update(static_cast<std::int64_t>(v));
        h.update(static_cast<std::int64_t>(row.label ? class_index(*row.label) : -1));
    }
    return h.digest();
}

void SplitSpec::validate() const {
    for (double f : {train_fraction, validate_fraction, test_fraction})
        if (f < 0.0 || f > 1.0) throw ConfigError("split fraction outside [0,1]");
    const double sum = train_fraction + validate_fraction + test_fraction;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("split fractions must sum to 1 (got " + std::to_string(sum) + ")");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_int(const std::string& cell, int& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

Dataset load_csv_impl(const std::string& path, const std::string& label_column,
                      const LabelEncoding& encoding, bool require_label) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("missing header row in " + path);

    const auto header = split_line(line);
    int label_col = -1;
    Dataset ds;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim(header[i]);
        if (name == label_column) {
            if (label_col >= 0) throw DataError("duplicate label column in " + path);
            label_col = static_cast<int>(i);
        } else {
            ds.schema.feature_names.push_back(name);
        }
    }
    if (label_col < 0 && require_label)
        throw DataError("label column '" + label_column + "' not found in " + path);
    ds.schema.label_name = label_column;

    const std::size_t arity = ds.schema.feature_names.size();
    std::vector<ValueDomain> observed(arity, ValueDomain{false, false, false});

    std::size_t row_number = 1;  // 1-based over data rows, for error messages
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw DataError(path + ": row " + std::to_string(row_number) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        FeatureVector row;
        row.values.reserve(arity);
        std::size_t feat = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            int v = 0;
            if (!parse_int(cells[i], v))
                throw DataError(path + ": row " + std::to_string(row_number) + ", column " +
                                trim(header[i]) + ": cannot parse '" + trim(cells[i]) +
                                "' as an integer");
            if (static_cast<int>(i) == label_col) {
                if (v == encoding.phishing)
                    row.label = Label::Phishing;
                else if (v == encoding.legitimate)
                    row.label = Label::Legitimate;
                else
                    throw DataError(path + ": row " + std::to_string(row_number) +
                                    ": unknown label value " + std::to_string(v));
            } else {
                if (v < -1 || v > 1)
                    throw DataError(path + ": row " + std::to_string(row_number) + ", column " +
                                    ds.schema.feature_names[feat] + ": value " +
                                    std::to_string(v) + " is not ternary");
                observed[feat][static_cast<std::size_t>(v + 1)] = true;
                row.values.push_back(v);
                ++feat;
            }
        }
        ds.rows.push_back(std::move(row));
        ++row_number;
    }

    ds.schema.domains.resize(arity);
    for (std::size_t f = 0; f < arity; ++f) {
        if (ds.rows.empty()) {
            ds.schema.domains[f] = ValueDomain{true, true, true};
        } else {
            ds.schema.domains[f] = observed[f];
            ds.schema.domains[f][1] = true;  // 0 ("suspicious") is always admissible
        }
    }
    ds.schema.validate();
    return ds;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const LabelEncoding& encoding) {
    return load_csv_impl(path, label_column, encoding, true);
}

Dataset load_feature_csv(const std::string& path, const std::string& label_column,
                         const LabelEncoding& encoding) {
    return load_csv_impl(path, label_column, encoding, false);
}

void save_csv(const Dataset& dataset, const std::string& path, const LabelEncoding& encoding) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path);
    const bool labeled = dataset.labeled() && !dataset.rows.empty();
    for (std::size_t f = 0; f < dataset.schema.arity(); ++f) {
        if (f) out << ',';
        out << dataset.schema.feature_names[f];
    }
    if (labeled || dataset.rows.empty()) {
        if (dataset.schema.arity()) out << ',';
        out << dataset.schema.label_name;
    }
    out << '\n';
    for (const auto& row : dataset.rows) {
        for (std::size_t f = 0; f < row.values.size(); ++f) {
            if (f) out << ',';
            out << row.values[f];
        }
        if (labeled) {
            if (!row.values.empty()) out << ',';
            out << (*row.label == Label::Phishing ? encoding.phishing : encoding.legitimate);
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing " + path);
}

Split split(const Dataset& dataset, const SplitSpec& spec) {
    spec.validate();
    const std::size_t n = dataset.size();
    const bool all_three = spec.train_fraction > 0 && spec.validate_fraction > 0 &&
                           spec.test_fraction > 0;
    if (all_three && n < 3)
        throw DataError("need at least 3 rows for a three-way split, have " + std::to_string(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937 rng(spec.seed);
    deterministic_shuffle(order, rng);

    const auto n_validate = static_cast<std::size_t>(static_cast<double>(n) * spec.validate_fraction);
    const auto n_test = static_cast<std::size_t>(static_cast<double>(n) * spec.test_fraction);
    const std::size_t n_train = n - n_validate - n_test;

    auto take = [&](std::size_t begin, std::size_t count) {
        std::vector<std::size_t> idx(order.begin() + static_cast<long>(begin),
                                     order.begin() + static_cast<long>(begin + count));
        std::sort(idx.begin(), idx.end());
        return dataset.subset(idx);
    };
    Split result;
    result.train = take(0, n_train);
    result.validate = take(n_train, n_validate);
    result.test = take(n_train + n_validate, n_test);
    return result;
}

std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& dataset, int k,
                                               std::uint32_t seed) {
    const std::size_t n = dataset.size();
    if (k < 2 || static_cast<std::size_t>(k) > n)
        throw ConfigError("k must satisfy 2 <= k <= N (k=" + std::to_string(k) +
                          ", N=" + std::to_string(n) + ")");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937 rng(seed);
    deterministic_shuffle(order, rng);

    std::vector<std::pair<Dataset, Dataset>> folds;
    folds.reserve(static_cast<std::size_t>(k));
    std::size_t begin = 0;
    for (int f = 0; f < k; ++f) {
        // First (n % k) folds get the extra row.
        const std::size_t size = n / static_cast<std::size_t>(k) +
                                 (static_cast<std::size_t>(f) < n % static_cast<std::size_t>(k) ? 1 : 0);
        std::vector<std::size_t> test_idx(order.begin() + static_cast<long>(begin),
                                          order.begin() + static_cast<long>(begin + size));
        std::vector<std::size_t> train_idx;
        train_idx.reserve(n - size);
        train_idx.insert(train_idx.end(), order.begin(), order.begin() + static_cast<long>(begin));
        train_idx.insert(train_idx.end(), order.begin() + static_cast<long>(begin + size), order.end());
        std::sort(test_idx.begin(), test_idx.end());
        std::sort(train_idx.begin(), train_idx.end());
        folds.emplace_back(dataset.subset(train_idx), dataset.subset(test_idx));
        begin += size;
    }
    return folds;
}

}  // namespace phishml
