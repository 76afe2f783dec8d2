#pragma once
// Dataset container: named numeric arrays plus metadata, written as a single
// archive file. Layout: a magic line, a metadata document, then one block per
// array with a plain-text header line naming the key and a little-endian
// float64 payload. Truth fields in the metadata are for the evaluator only;
// workflows receive a truth-stripped view.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plotsteer/errors.hpp"

namespace plotsteer::models {

struct DatasetMeta {
    std::string task_id;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;  // constant noise level for families without a sigma array
    // truth fields; stripped before a dataset reaches a workflow
    bool truth_present = false;
    std::string truth_model_id;
    std::vector<double> truth_params;
    bool operator==(const DatasetMeta&) const = default;
};

struct Dataset {
    // insertion-ordered arrays; keys match the task statements exactly
    std::vector<std::pair<std::string, std::vector<double>>> arrays;
    DatasetMeta meta;

    bool operator==(const Dataset&) const = default;

    bool has(const std::string& key) const {
        for (const auto& [k, v] : arrays)
            if (k == key) return true;
        return false;
    }

    const std::vector<double>& array(const std::string& key) const {
        for (const auto& [k, v] : arrays)
            if (k == key) return v;
        throw KeyMismatch("no array '" + key + "'");
    }

    std::size_t size() const { return arrays.empty() ? 0 : arrays.front().second.size(); }

    void add(const std::string& key, std::vector<double> values) {
        arrays.emplace_back(key, std::move(values));
    }

    Dataset truth_stripped() const {
        Dataset d = *this;
        d.meta.truth_present = false;
        d.meta.truth_model_id.clear();
        d.meta.truth_params.clear();
        return d;
    }

    void validate() const {
        if (arrays.empty()) throw KeyMismatch("dataset has no arrays");
        const std::size_t n = arrays.front().second.size();
        if (n < 10) throw KeyMismatch("arrays must have length >= 10");
        for (const auto& [k, v] : arrays) {
            if (v.size() != n) throw LengthMismatch("array '" + k + "'");
            if (k.rfind("sigma", 0) == 0) {
                for (double s : v)
                    if (!(s > 0.0)) throw NonPositiveSigma(0);
            }
        }
    }
};

inline constexpr const char* kArchiveMagic = "PLOTSTEER-DATA 1";

inline nlohmann::json meta_to_json(const DatasetMeta& m) {
    nlohmann::json j{{"task_id", m.task_id}, {"seed", m.seed}, {"noise_sigma", m.noise_sigma}};
    if (m.truth_present) {
        j["truth_model_id"] = m.truth_model_id;
        j["truth_params"] = m.truth_params;
    }
    return j;
}

inline DatasetMeta meta_from_json(const nlohmann::json& j) {
    DatasetMeta m;
    m.task_id = j.value("task_id", "");
    m.seed = j.value("seed", std::uint64_t{0});
    m.noise_sigma = j.value("noise_sigma", 0.0);
    if (j.contains("truth_model_id")) {
        m.truth_present = true;
        m.truth_model_id = j.at("truth_model_id").get<std::string>();
        m.truth_params = j.value("truth_params", std::vector<double>{});
    }
    return m;
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
    ds.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw WriteFailure(path);
    const std::string meta = meta_to_json(ds.meta).dump();
    out << kArchiveMagic << "\n";
    out << "meta " << meta.size() << "\n" << meta << "\n";
    for (const auto& [key, values] : ds.arrays) {
        out << "array " << key << " " << values.size() << "\n";
        for (double v : values) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            unsigned char bytes[8];
            for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
            out.write(reinterpret_cast<const char*>(bytes), 8);
        }
        out << "\n";
    }
    out << "end\n";
    if (!out) throw WriteFailure(path);
}

inline Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read dataset: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kArchiveMagic)
        throw MalformedDocument("bad dataset magic in " + path);
    Dataset ds;
    while (std::getline(in, line)) {
        if (line == "end") {
            ds.validate();
            return ds;
        }
        std::istringstream header(line);
        std::string tag;
        header >> tag;
        if (tag == "meta") {
            std::size_t len = 0;
            header >> len;
            std::string doc(len, '\0');
            in.read(doc.data(), static_cast<std::streamsize>(len));
            in.ignore(1);  // trailing newline
            nlohmann::json j = nlohmann::json::parse(doc, nullptr, false);
            if (j.is_discarded()) throw MalformedDocument("dataset metadata");
            ds.meta = meta_from_json(j);
        } else if (tag == "array") {
            std::string key;
            std::size_t count = 0;
            header >> key >> count;
            std::vector<double> values(count);
            for (std::size_t i = 0; i < count; ++i) {
                unsigned char bytes[8];
                in.read(reinterpret_cast<char*>(bytes), 8);
                std::uint64_t bits = 0;
                for (int b = 0; b < 8; ++b) bits |= std::uint64_t(bytes[b]) << (8 * b);
                double v;
                std::memcpy(&v, &bits, sizeof v);
                values[i] = v;
            }
            in.ignore(1);
            if (!in) throw MalformedDocument("truncated array block '" + key + "'");
            ds.add(key, std::move(values));
        } else {
            throw MalformedDocument("unknown dataset block '" + tag + "'");
        }
    }
    throw MalformedDocument("dataset missing end marker");
}

// Comma-separated export: one column per array, keys as the header row.
inline void export_csv(const Dataset& ds, const std::string& path) {
    ds.validate();
    std::ofstream out(path);
    if (!out) throw WriteFailure(path);
    for (std::size_t c = 0; c < ds.arrays.size(); ++c)
        out << (c ? "," : "") << ds.arrays[c].first;
    out << "\n";
    out.precision(17);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t c = 0; c < ds.arrays.size(); ++c)
            out << (c ? "," : "") << ds.arrays[c].second[r];
        out << "\n";
    }
    if (!out) throw WriteFailure(path);
}

} // namespace plotsteer::models
