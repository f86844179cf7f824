#pragma once

/**
 * @file envelope.hpp
 * @brief Canonical machine-readable output wrapper for the CLI.
 *
 * Every subcommand answers with one envelope: the command path, the
 * parameters it actually used, and an operation-specific results
 * object. Keys are emitted sorted and numbers round-trip exactly, so
 * identical inputs produce byte-identical output. runtime_ms stays 0
 * unless timing was explicitly requested, for the same reason.
 */

#include <cstdint>
#include <string>

#include "json.hpp"

namespace primetails {

using json = nlohmann::json;

struct OutputEnvelope {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    int64_t runtime_ms = 0;
};

inline std::string render_json(const OutputEnvelope& e) {
    json j;
    j["command"] = e.command;
    j["parameters"] = e.parameters;
    j["results"] = e.results;
    j["runtime_ms"] = e.runtime_ms;
    return j.dump(2) + "\n";
}

/// Flat results as a two-line CSV: header of keys, then the values.
/// Structured exports (distributions, histograms) have their own row
/// formats and bypass this.
inline std::string render_csv(const OutputEnvelope& e) {
    std::string head, row;
    for (auto it = e.results.begin(); it != e.results.end(); ++it) {
        if (!head.empty()) {
            head += ',';
            row += ',';
        }
        head += it.key();
        row += it->is_string() ? it->get<std::string>() : it->dump();
    }
    return head + "\n" + row + "\n";
}

} // namespace primetails
