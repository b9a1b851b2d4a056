#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ulam/oracle.hpp"
#include "ulam/prob_model.hpp"
#include "ulam/rational.hpp"
#include "ulam/types.hpp"

namespace ulam::io {

using ordered_json = nlohmann::ordered_json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One sequence per line, space-separated positive integers. Tolerates an
// optional "n=<int>" first line, blank lines and '#' comments.
inline std::vector<std::vector<int>> read_sequences(std::istream& in) {
    std::vector<std::vector<int>> out;
    std::string line;
    bool first_content = true;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        std::vector<int> seq;
        bool header = false;
        while (ls >> tok) {
            if (first_content && seq.empty() && tok.rfind("n=", 0) == 0) {
                header = true;  // dimension header; n is inferred anyway
                break;
            }
            int v = 0;
            try {
                std::size_t pos = 0;
                v = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw parse_error("bad token '" + tok + "' in sequence input");
            }
            if (v < 1) throw parse_error("sequence values must be positive, got " + std::to_string(v));
            seq.push_back(v);
        }
        if (header) {
            first_content = false;
            continue;
        }
        if (!seq.empty()) {
            out.push_back(std::move(seq));
            first_content = false;
        }
    }
    return out;
}

inline std::vector<std::vector<int>> read_sequences_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    return read_sequences(in);
}

inline std::vector<Permutation> as_permutations(const std::vector<std::vector<int>>& raw) {
    std::vector<Permutation> out;
    out.reserve(raw.size());
    for (const auto& seq : raw) {
        out.emplace_back(seq);
        if (out.back().size() != out.front().size()) throw parse_error("dimension mismatch between lines");
    }
    return out;
}

inline std::vector<SymbolString> as_strings(const std::vector<std::vector<int>>& raw) {
    int sigma = 0;
    for (const auto& seq : raw) {
        for (int v : seq) sigma = std::max(sigma, v);
    }
    std::vector<SymbolString> out;
    out.reserve(raw.size());
    for (const auto& seq : raw) out.emplace_back(seq, sigma);
    return out;
}

inline constexpr const char* kSampleSetFormat = "ulam-sampleset-v1";

// Versioned sample-set document. Metadata pins every convention a reader
// needs to reproduce the draw: the generator, the substream scheme, the move
// application order and the logarithm base of the m-threshold.
inline ordered_json sampleset_to_json(const SampleSet& set) {
    ordered_json doc;
    doc["format"] = kSampleSetFormat;
    doc["n"] = set.source.size();
    doc["epsilon"] = set.params.epsilon.to_string();
    doc["m"] = set.params.m;
    doc["seed"] = set.params.seed;
    doc["generator"] = "mt19937_64/splitmix64-substreams";
    doc["move_order"] = "ascending-symbol";
    doc["log_base"] = 2;
    doc["source"] = set.source.elems();
    doc["samples"] = ordered_json::array();
    for (const auto& s : set.samples) doc["samples"].push_back(s.elems());
    doc["records"] = ordered_json::array();
    for (const auto& r : set.records) {
        ordered_json moves = ordered_json::array();
        for (const auto& [a, b] : r.moves) moves.push_back(ordered_json::array({a, b}));
        doc["records"].push_back(ordered_json{{"moves", std::move(moves)}});
    }
    return doc;
}

inline SampleSet sampleset_from_json(const ordered_json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kSampleSetFormat) {
        throw parse_error(std::string("expected a ") + kSampleSetFormat + " document");
    }
    try {
        ModelParams params;
        params.epsilon = Rational::parse(doc.at("epsilon").get<std::string>());
        params.m = doc.at("m").get<int>();
        params.seed = doc.at("seed").get<std::uint64_t>();
        Permutation source(doc.at("source").get<std::vector<int>>());
        SampleSet set(std::move(source), params);
        for (const auto& s : doc.at("samples")) {
            set.samples.emplace_back(s.get<std::vector<int>>());
        }
        if (doc.contains("records")) {
            for (const auto& r : doc.at("records")) {
                PerturbationRecord rec;
                for (const auto& mv : r.at("moves")) {
                    rec.moves.emplace_back(mv.at(0).get<int>(), mv.at(1).get<int>());
                }
                set.records.push_back(std::move(rec));
            }
        }
        if (static_cast<int>(set.samples.size()) != params.m) {
            throw parse_error("sample count does not match m");
        }
        if (!set.records.empty() && set.records.size() != set.samples.size()) {
            throw parse_error("record count does not match the sample count");
        }
        for (const auto& s : set.samples) {
            if (s.size() != set.source.size()) throw parse_error("sample dimension mismatch");
        }
        return set;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed sample set: ") + e.what());
    }
}

inline SampleSet read_sampleset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return sampleset_from_json(doc);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw io_error("short write to '" + path + "'");
}

inline ordered_json ratio_report_to_json(const oracle::RatioReport& rep) {
    ordered_json doc;
    if (rep.opt) {
        doc["opt"] = *rep.opt;
    } else {
        doc["opt"] = nullptr;
    }
    doc["candidates"] = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json r;
        r["label"] = row.label;
        r["objective"] = row.objective;
        if (row.ratio) {
            r["ratio"] = *row.ratio;
        } else {
            r["ratio"] = nullptr;
        }
        doc["candidates"].push_back(std::move(r));
    }
    return doc;
}

inline std::string ratio_report_to_text(const oracle::RatioReport& rep) {
    std::size_t label_w = 9;  // "candidate"
    for (const auto& row : rep.rows) label_w = std::max(label_w, row.label.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(label_w)) << "candidate" << "  "
        << std::right << std::setw(10) << "objective" << "  " << std::setw(8) << "ratio" << "\n";
    for (const auto& row : rep.rows) {
        out << std::left << std::setw(static_cast<int>(label_w)) << row.label << "  "
            << std::right << std::setw(10) << row.objective << "  ";
        if (row.ratio) {
            out << std::setw(8) << std::fixed << std::setprecision(4) << *row.ratio;
            out.unsetf(std::ios::fixed);
            out << std::setprecision(6);
        } else {
            out << std::setw(8) << "-";
        }
        out << "\n";
    }
    if (rep.opt) out << "OPT = " << *rep.opt << "\n";
    return out.str();
}

inline std::string format_sequence(const std::vector<int>& seq) {
    std::ostringstream out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out << ' ';
        out << seq[i];
    }
    return out.str();
}

}  // namespace ulam::io
