#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flowforms/asymptotic.hpp"
#include "flowforms/flow_graph.hpp"
#include "flowforms/recurrence.hpp"
#include "flowforms/synthesis.hpp"

namespace flowforms::io {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

// 1-based (line, column) of a byte offset, for parse diagnostics.
std::pair<int, int> line_col_of(const std::string& text, size_t byte_offset);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Flow specs and forms as JSON:
//   {"dim": 2, "components": [[{"c": 1.0, "k": [0, 1], "basis": "cos"}]], ...}
//   {"periods": [-1.0, 0.0], "potential": [{"c": ..., "k": ..., "basis": ...}]}
// Parsers throw ConfigError with line/column on malformed input.
std::string flow_spec_to_json(const TorusFlowSpec& spec);
TorusFlowSpec flow_spec_from_json(const std::string& text);
std::string form_to_json(const ClosedOneForm& form);
ClosedOneForm form_from_json(const std::string& text);

// Graph persistence: metadata JSON plus an RFC 4180 CSV edge list
// (tail, head, disp per axis, weight; CRLF line ends).  The round trip is
// lossless: doubles are written with shortest round-trip precision.
void save_flow_graph(const FlowGraph& graph, const std::string& csv_path,
                     const std::string& meta_path);
FlowGraph load_flow_graph(const std::string& csv_path,
                          const std::string& meta_path);

std::string cycle_to_json(const Cycle& cycle);
std::string recurrence_to_json(const RecurrenceReport& report);
std::string condition_to_json(const ConditionReport& report);
std::string lyapunov_data_to_json(const DiscreteLyapunovData& data);
std::string verification_to_json(const VerificationReport& report);

// One CSV row per start point: x0, A, pairing with the class, duration, gap.
std::string asymptotic_csv(const std::vector<AsymptoticCycleEstimate>& rows,
                           const ClosedOneForm& form);

}  // namespace flowforms::io
