#pragma once

#include <string>

#include "pslopt/search.hpp"
#include "pslopt/sequence.hpp"

namespace pslopt::io {

// Text formats, all line-based.  See docs/formats.md for the grammar.
// Doubles are printed with std::to_chars (shortest form that parses back to
// the same bits) and read with std::from_chars, so every value survives a
// write/read round trip exactly.

// --- sequence files: one line, '+'/'-' per element ------------------------

std::string format_sequence(const BinarySequence& s);   // no newline
BinarySequence parse_sequence(const std::string& text); // accepts +-/01

void write_sequence(const std::string& path, const BinarySequence& s);
BinarySequence read_sequence(const std::string& path);

// --- run records: "key: value" lines in fixed order -----------------------

std::string format_run_record(const RunRecord& record);
RunRecord parse_run_record(const std::string& text);

void write_run_record(const std::string& path, const RunRecord& record);
RunRecord read_run_record(const std::string& path);

// --- convergence CSV -------------------------------------------------------

inline constexpr const char* kConvergenceCsvHeader =
    "nse,elapsed_seconds,psl_best,phase_index,kind";

std::string format_convergence_row(const ConvergenceEvent& event);  // no newline
ConvergenceEvent parse_convergence_row(const std::string& line);

// Appends one event row, writing the header first if the file is new or
// empty.  Opens, writes, and closes per call so partial runs stay readable.
void append_convergence_csv(const std::string& path,
                            const ConvergenceEvent& event);

}  // namespace pslopt::io
