#include "mn/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mn/rng.hpp"

namespace mn {

namespace {

std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

Dataset load_impl(std::istream& in, const Schema* schema) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty input: missing header row");
    std::vector<std::string> names = split_record(line);
    const int n = static_cast<int>(names.size());
    for (const auto& name : names)
        if (name.empty())
            throw std::runtime_error("header contains an empty variable name");

    std::vector<int> declared(n, 0);
    if (schema) {
        if (static_cast<int>(schema->names.size()) != n)
            throw std::runtime_error("schema declares a different variable count");
        for (int j = 0; j < n; ++j) {
            if (schema->names[j] != names[j])
                throw std::runtime_error("schema variable name mismatch: " + schema->names[j]);
            declared[j] = schema->arities[j];
        }
    }

    std::vector<std::unordered_map<std::string, std::int32_t>> code_of(n);
    std::vector<std::vector<std::string>> labels(n);
    std::vector<std::int32_t> cells;
    long rows = 0;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.peek() == EOF)
            break; // trailing newline
        std::vector<std::string> fields = split_record(line);
        if (static_cast<int>(fields.size()) != n)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(n) + " fields, got " +
                                     std::to_string(fields.size()));
        for (int j = 0; j < n; ++j) {
            const std::string& f = fields[j];
            if (f.empty())
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": empty field in column " + names[j]);
            auto it = code_of[j].find(f);
            std::int32_t code;
            if (it == code_of[j].end()) {
                code = static_cast<std::int32_t>(labels[j].size());
                code_of[j].emplace(f, code);
                labels[j].push_back(f);
            } else {
                code = it->second;
            }
            cells.push_back(code);
        }
        ++rows;
    }
    if (rows == 0)
        throw std::runtime_error("empty dataset: header present but no rows");

    std::vector<int> arities(n);
    for (int j = 0; j < n; ++j) {
        const int observed = static_cast<int>(labels[j].size());
        if (schema) {
            if (observed > declared[j])
                throw std::runtime_error("column " + names[j] + " has " +
                                         std::to_string(observed) +
                                         " categories but schema declares " +
                                         std::to_string(declared[j]));
            arities[j] = declared[j];
        } else {
            arities[j] = observed;
        }
    }
    return Dataset(std::move(names), std::move(arities), std::move(labels), std::move(cells));
}

} // namespace

Dataset::Dataset(std::vector<std::string> names, std::vector<int> arities,
                 std::vector<std::vector<std::string>> labels,
                 std::vector<std::int32_t> cells)
    : names_(std::move(names)), arities_(std::move(arities)), labels_(std::move(labels)),
      cells_(std::move(cells)) {
    const std::size_t n = names_.size();
    if (arities_.size() != n || labels_.size() != n)
        throw std::invalid_argument("dataset: mismatched per-variable metadata");
    if (n == 0) {
        rows_ = 0;
        return;
    }
    if (cells_.size() % n != 0)
        throw std::invalid_argument("dataset: cell count not a multiple of variable count");
    rows_ = static_cast<long>(cells_.size() / n);
    for (std::size_t j = 0; j < n; ++j)
        if (arities_[j] < 1)
            throw std::invalid_argument("dataset: arity must be at least 1");
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const std::size_t j = i % n;
        if (cells_[i] < 0 || cells_[i] >= arities_[j])
            throw std::invalid_argument("dataset: cell code out of range for its arity");
    }
}

Dataset load_dataset(std::istream& in) { return load_impl(in, nullptr); }

Dataset load_dataset(std::istream& in, const Schema& schema) { return load_impl(in, &schema); }

Dataset load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return load_dataset(in);
}

Dataset load_dataset_file(const std::string& path, const std::string& schema_path) {
    std::ifstream sin(schema_path);
    if (!sin)
        throw std::runtime_error("cannot open: " + schema_path);
    Schema schema = parse_schema(sin);
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return load_dataset(in, schema);
}

void save_dataset(std::ostream& out, const Dataset& d) {
    const int n = d.var_count();
    for (int j = 0; j < n; ++j)
        out << d.variable_names()[j] << (j + 1 < n ? "," : "\n");
    for (long r = 0; r < d.row_count(); ++r)
        for (int j = 0; j < n; ++j)
            out << d.categories()[j][d.value(r, j)] << (j + 1 < n ? "," : "\n");
}

void save_dataset_file(const std::string& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    save_dataset(out, d);
}

Schema parse_schema(std::istream& in) {
    Schema schema;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto colon = line.rfind(':');
        if (colon == std::string::npos)
            throw std::runtime_error("schema line " + std::to_string(line_no) +
                                     ": expected name:arity");
        schema.names.push_back(line.substr(0, colon));
        const int arity = std::stoi(line.substr(colon + 1));
        if (arity < 1)
            throw std::runtime_error("schema line " + std::to_string(line_no) +
                                     ": arity must be positive");
        schema.arities.push_back(arity);
    }
    return schema;
}

Dataset subsample(const Dataset& d, long size, std::uint64_t seed) {
    if (size < 1 || size > d.row_count())
        throw std::invalid_argument("subsample size must be in [1, N]");
    Rng rng(seed);
    // Partial Fisher-Yates: the first `size` entries are a uniform draw
    // without replacement.
    std::vector<long> index(d.row_count());
    for (long i = 0; i < d.row_count(); ++i)
        index[i] = i;
    for (long i = 0; i < size; ++i) {
        const long j = i + rng.uniform_int(0, static_cast<int>(d.row_count() - 1 - i));
        std::swap(index[i], index[j]);
    }
    const int n = d.var_count();
    std::vector<std::int32_t> cells;
    cells.reserve(static_cast<std::size_t>(size) * n);
    for (long i = 0; i < size; ++i)
        for (int j = 0; j < n; ++j)
            cells.push_back(d.value(index[i], j));
    return Dataset(d.variable_names(), d.arities(), d.categories(), std::move(cells));
}

ContingencyTable contingency_table(const Dataset& d, const Triplet& t, int dense_z_cap) {
    const int n = d.var_count();
    if (t.x() >= n || t.y() >= n)
        throw std::invalid_argument("triplet variable out of range");
    for (int v : t.z())
        if (v >= n)
            throw std::invalid_argument("conditioning variable out of range");

    const int rx = d.arity(t.x());
    const int ry = d.arity(t.y());
    const std::size_t block = static_cast<std::size_t>(rx) * ry;

    // Mixed-radix packing of the z configuration, z in canonical order.
    std::uint64_t configs = 1;
    bool addressable = true;
    for (int v : t.z()) {
        const std::uint64_t a = static_cast<std::uint64_t>(d.arity(v));
        if (configs > UINT64_MAX / a) {
            addressable = false;
            break;
        }
        configs *= a;
    }
    if (!addressable)
        throw std::runtime_error("conditioning set configuration space exceeds 64-bit keys");

    // Dense materialization is bounded both by the variable count and the
    // configuration count (they coincide for binary conditioners).
    const bool dense = static_cast<int>(t.z().size()) <= dense_z_cap &&
                       configs <= (1ULL << std::min(dense_z_cap, 20));

    std::unordered_map<std::uint64_t, std::vector<long>> acc;
    for (long r = 0; r < d.row_count(); ++r) {
        std::uint64_t key = 0;
        for (int v : t.z())
            key = key * static_cast<std::uint64_t>(d.arity(v)) + d.value(r, v);
        auto [it, fresh] = acc.try_emplace(key);
        if (fresh)
            it->second.assign(block, 0);
        it->second[static_cast<std::size_t>(d.value(r, t.x())) * ry + d.value(r, t.y())]++;
    }

    ContingencyTable::SliceMap slices;
    if (dense) {
        slices.reserve(configs);
        for (std::uint64_t k = 0; k < configs; ++k) {
            auto it = acc.find(k);
            if (it != acc.end())
                slices.emplace_back(k, std::move(it->second));
            else
                slices.emplace_back(k, std::vector<long>(block, 0));
        }
    } else {
        slices.reserve(acc.size());
        for (auto& [k, cells] : acc)
            slices.emplace_back(k, std::move(cells));
        std::sort(slices.begin(), slices.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return ContingencyTable(t, rx, ry, d.row_count(), dense, std::move(slices));
}

} // namespace mn
