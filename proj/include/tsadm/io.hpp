#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsadm/errors.hpp"
#include "tsadm/labels.hpp"
#include "tsadm/synthgen.hpp"

namespace tsadm {

// Shortest round-trip decimal form; locale-free and stable across runs.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << content;
}

inline std::string file_digest(const std::filesystem::path& path) { return hex64(fnv1a64(read_file(path))); }

namespace io_detail {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline Csv parse_csv(const std::string& text, const std::string& origin) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (first) {
            csv.header = fields;
            first = false;
        } else {
            if (fields.size() != csv.header.size())
                throw ParseError(origin + ": row has " + std::to_string(fields.size()) + " fields, header has " +
                                 std::to_string(csv.header.size()));
            csv.rows.push_back(std::move(fields));
        }
    }
    if (first) throw ParseError(origin + ": empty file");
    return csv;
}

inline std::size_t column_index(const Csv& csv, const std::string& name, const std::string& origin) {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
        if (csv.header[i] == name) return i;
    throw ParseError(origin + ": missing column '" + name + "'");
}

inline double parse_double(const std::string& s, const std::string& origin) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(origin + ": bad number '" + s + "'");
    }
}

}  // namespace io_detail

// data CSV: t,value,label — one row per timestep.
inline std::string dataset_to_csv(const GeneratedDataset& d) {
    std::string out = "t,value,label\n";
    for (std::size_t t = 0; t < d.signal.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(d.signal[t]);
        out += ',';
        out += d.labels[t] ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline std::string labels_to_csv(const BinaryLabelSeries& labels) {
    std::string out = "t,label\n";
    for (std::size_t t = 0; t < labels.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += labels[t] ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline std::string scores_to_csv(const ScoreSeries& scores) {
    std::string out = "t,score\n";
    for (std::size_t t = 0; t < scores.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(scores[t]);
        out += '\n';
    }
    return out;
}

inline std::string predictions_to_csv(const BinaryLabelSeries& preds) {
    std::string out = "t,pred\n";
    for (std::size_t t = 0; t < preds.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += preds[t] ? '1' : '0';
        out += '\n';
    }
    return out;
}

// Reads a 0/1 column (any of label/pred) from a CSV file.
inline BinaryLabelSeries read_binary_csv(const std::filesystem::path& path) {
    const auto csv = io_detail::parse_csv(read_file(path), path.string());
    std::size_t col = csv.header.size();
    for (const char* name : {"label", "pred"})
        for (std::size_t i = 0; i < csv.header.size(); ++i)
            if (csv.header[i] == name) col = i;
    if (col >= csv.header.size()) throw ParseError(path.string() + ": no label/pred column");
    BinaryLabelSeries out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row[col] == "0")
            out.push_back(0);
        else if (row[col] == "1")
            out.push_back(1);
        else
            throw ParseError(path.string() + ": label values must be 0 or 1, got '" + row[col] + "'");
    }
    return out;
}

inline ScoreSeries read_scores_csv(const std::filesystem::path& path) {
    const auto csv = io_detail::parse_csv(read_file(path), path.string());
    const std::size_t col = io_detail::column_index(csv, "score", path.string());
    ScoreSeries out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        const double v = io_detail::parse_double(row[col], path.string());
        if (!std::isfinite(v)) throw ParseError(path.string() + ": scores must be finite");
        out.push_back(v);
    }
    return out;
}

inline nlohmann::json events_to_json(const GeneratedDataset& d) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AnomalyEvent& ev : d.events) {
        arr.push_back({{"start", ev.span.start},
                       {"end", ev.span.end},
                       {"family", family_name(ev.family)},
                       {"variant", ev.variant},
                       {"magnitude", ev.magnitude}});
    }
    return nlohmann::json{{"sigma0", d.sigma0}, {"sigma_hf", d.sigma_hf}, {"events", arr}};
}

// Fail-closed JSON object reader: unknown keys are errors.
inline void require_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                         const std::string& origin) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const std::string& a : allowed) ok |= key == a;
        if (!ok) throw ParseError(origin + ": unknown key '" + key + "'");
    }
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace tsadm
