#include "pslopt/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pslopt/errors.hpp"

namespace pslopt::io {

namespace {

constexpr const char* kRecordHeader = "pslopt-run v1";

std::string format_elements(std::span<const int8_t> elems) {
  std::string out;
  out.reserve(elems.size());
  for (int8_t e : elems) out.push_back(e > 0 ? '+' : '-');
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double_token(const std::string& tok, const std::string& where) {
  double v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError(where + ": cannot parse '" + tok + "' as a number");
  }
  return v;
}

template <typename Int>
Int parse_int_token(const std::string& tok, const std::string& where) {
  Int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError(where + ": cannot parse '" + tok + "' as an integer");
  }
  return v;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  // A trailing newline produces one empty final element; drop it.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t pos = 0;
  for (;;) {
    const size_t at = line.find(sep, pos);
    if (at == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, at - pos));
    pos = at + 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out.good()) throw IoError("write failure on '" + path + "'");
}

// Pulls "value" out of "key: value" at lines[idx], insisting on the key.
const std::string expect_field(const std::vector<std::string>& lines,
                               size_t idx, const std::string& key) {
  if (idx >= lines.size()) {
    throw ParseError("run record line " + std::to_string(idx + 1) +
                     ": expected '" + key + ":', found end of file");
  }
  const std::string& line = lines[idx];
  const std::string prefix = key + ": ";
  if (line.rfind(prefix, 0) != 0) {
    throw ParseError("run record line " + std::to_string(idx + 1) +
                     ": expected '" + key + ":', got '" + line + "'");
  }
  return line.substr(prefix.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// Sequence files
// ---------------------------------------------------------------------------

std::string format_sequence(const BinarySequence& s) {
  return format_elements(s.elements());
}

BinarySequence parse_sequence(const std::string& text) {
  // Strip at most one trailing newline; anything else must be sequence data.
  size_t end = text.size();
  if (end > 0 && text[end - 1] == '\n') {
    --end;
    if (end > 0 && text[end - 1] == '\r') --end;
  }
  if (end == 0) throw ParseError("empty sequence");

  const char first = text[0];
  const bool pm = (first == '+' || first == '-');
  const bool bits = (first == '0' || first == '1');
  if (!pm && !bits) {
    throw ParseError(std::string("unexpected character '") + first +
                     "' at byte offset 0; sequences use '+'/'-' or '0'/'1'");
  }
  std::vector<int8_t> elems;
  elems.reserve(end);
  for (size_t i = 0; i < end; ++i) {
    const char ch = text[i];
    if (pm && ch == '+') {
      elems.push_back(+1);
    } else if (pm && ch == '-') {
      elems.push_back(-1);
    } else if (bits && ch == '1') {
      elems.push_back(+1);
    } else if (bits && ch == '0') {
      elems.push_back(-1);
    } else {
      throw ParseError(std::string("unexpected character '") + ch +
                       "' at byte offset " + std::to_string(i) +
                       "; expected only '" + (pm ? "+'/'-" : "0'/'1") +
                       "' (alphabets cannot be mixed)");
    }
  }
  if (elems.size() < kMinLength || elems.size() > kMaxLength) {
    throw ParseError("sequence length " + std::to_string(elems.size()) +
                     " out of supported range [" + std::to_string(kMinLength) +
                     ", " + std::to_string(kMaxLength) + "]");
  }
  return BinarySequence(std::move(elems));
}

void write_sequence(const std::string& path, const BinarySequence& s) {
  write_file(path, format_sequence(s) + "\n");
}

BinarySequence read_sequence(const std::string& path) {
  try {
    return parse_sequence(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Run records
// ---------------------------------------------------------------------------

std::string format_run_record(const RunRecord& record) {
  const SearchParams& p = record.params;
  std::string out;
  out += kRecordHeader;
  out += '\n';
  out += "length: " + std::to_string(p.length) + "\n";
  out += "seed: " + std::to_string(p.seed) + "\n";
  out += "alpha1: " + std::to_string(p.alpha1) + "\n";
  out += "alpha2: " + std::to_string(p.alpha2) + "\n";
  out += "ls-lmt: " + std::to_string(p.ls_lmt) + "\n";
  out += "flip-lmt: " + std::to_string(p.flip_lmt) + "\n";
  out += "n-lmt: " + std::to_string(p.n_lmt) + "\n";
  out += "workers: " + std::to_string(p.workers) + "\n";
  out += "max-nse: " +
         (p.stop.max_nse ? std::to_string(*p.stop.max_nse) : "none") + "\n";
  out += "max-seconds: " +
         (p.stop.max_seconds ? format_double(*p.stop.max_seconds) : "none") +
         "\n";
  out += "init: " + (p.init ? format_elements({p.init->data(), p.init->size()})
                            : "none") +
         "\n";
  out += "solver-version: " + record.solver_version + "\n";
  out += "nse: " + std::to_string(record.nse) + "\n";
  out += "elapsed-seconds: " + format_double(record.elapsed_seconds) + "\n";
  out += "psl-best: " + std::to_string(record.psl_best) + "\n";
  out += "merit-factor: " + format_double(record.merit_factor) + "\n";
  out += "solution-best: " + format_sequence(record.solution_best) + "\n";
  out += "events: " + std::to_string(record.events.size()) + "\n";
  for (const ConvergenceEvent& e : record.events) {
    out += "event: " + std::to_string(e.nse) + " " +
           format_double(e.elapsed_seconds) + " " +
           std::to_string(e.psl_best) + " " + std::to_string(e.phase_index) +
           " " + to_string(e.kind) + "\n";
  }
  return out;
}

RunRecord parse_run_record(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != kRecordHeader) {
    throw ParseError(std::string("run record line 1: expected '") +
                     kRecordHeader + "'");
  }
  size_t at = 1;
  const auto next = [&](const char* key) { return expect_field(lines, at++, key); };

  SearchParams p;
  p.length = parse_int_token<uint32_t>(next("length"), "length");
  p.seed = parse_int_token<uint64_t>(next("seed"), "seed");
  p.alpha1 = parse_int_token<uint32_t>(next("alpha1"), "alpha1");
  p.alpha2 = parse_int_token<uint32_t>(next("alpha2"), "alpha2");
  p.ls_lmt = parse_int_token<uint32_t>(next("ls-lmt"), "ls-lmt");
  p.flip_lmt = parse_int_token<uint32_t>(next("flip-lmt"), "flip-lmt");
  p.n_lmt = parse_int_token<uint32_t>(next("n-lmt"), "n-lmt");
  p.workers = parse_int_token<uint32_t>(next("workers"), "workers");
  if (const std::string tok = next("max-nse"); tok != "none") {
    p.stop.max_nse = parse_int_token<uint64_t>(tok, "max-nse");
  }
  if (const std::string tok = next("max-seconds"); tok != "none") {
    p.stop.max_seconds = parse_double_token(tok, "max-seconds");
  }
  if (const std::string tok = next("init"); tok != "none") {
    try {
      BinarySequence init = parse_sequence(tok);
      p.init = std::vector<int8_t>(init.elements().begin(),
                                   init.elements().end());
    } catch (const ParseError& e) {
      throw ParseError(std::string("init: ") + e.what());
    }
    if (p.init->size() != p.length) {
      throw ParseError("init sequence length does not match 'length' field");
    }
  }
  std::string version = next("solver-version");
  const uint64_t nse = parse_int_token<uint64_t>(next("nse"), "nse");
  const double elapsed =
      parse_double_token(next("elapsed-seconds"), "elapsed-seconds");
  const int32_t psl_best =
      parse_int_token<int32_t>(next("psl-best"), "psl-best");
  const double mf = parse_double_token(next("merit-factor"), "merit-factor");

  const std::string solution_tok = next("solution-best");
  BinarySequence solution = [&] {
    try {
      return parse_sequence(solution_tok);
    } catch (const ParseError& e) {
      throw ParseError(std::string("solution-best: ") + e.what());
    }
  }();
  if (solution.length() != p.length) {
    throw ParseError("solution-best length does not match 'length' field");
  }

  const uint64_t n_events =
      parse_int_token<uint64_t>(next("events"), "events");
  std::vector<ConvergenceEvent> events;
  events.reserve(n_events);
  for (uint64_t i = 0; i < n_events; ++i) {
    const std::string tok = next("event");
    const std::vector<std::string> f = split_fields(tok, ' ');
    if (f.size() != 5) {
      throw ParseError("run record line " + std::to_string(at) +
                       ": event needs 5 fields, got " +
                       std::to_string(f.size()));
    }
    ConvergenceEvent e{};
    e.nse = parse_int_token<uint64_t>(f[0], "event nse");
    e.elapsed_seconds = parse_double_token(f[1], "event elapsed");
    e.psl_best = parse_int_token<int32_t>(f[2], "event psl");
    e.phase_index = parse_int_token<uint32_t>(f[3], "event phase");
    e.kind = event_kind_from_string(f[4]);
    events.push_back(e);
  }
  if (at != lines.size()) {
    throw ParseError("run record line " + std::to_string(at + 1) +
                     ": unexpected trailing content");
  }

  return RunRecord{std::move(p), std::move(solution), psl_best, mf,
                   nse,          elapsed,             std::move(events),
                   std::move(version)};
}

void write_run_record(const std::string& path, const RunRecord& record) {
  write_file(path, format_run_record(record));
}

RunRecord read_run_record(const std::string& path) {
  try {
    return parse_run_record(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Convergence CSV
// ---------------------------------------------------------------------------

std::string format_convergence_row(const ConvergenceEvent& event) {
  return std::to_string(event.nse) + "," +
         format_double(event.elapsed_seconds) + "," +
         std::to_string(event.psl_best) + "," +
         std::to_string(event.phase_index) + "," + to_string(event.kind);
}

ConvergenceEvent parse_convergence_row(const std::string& line) {
  const std::vector<std::string> f = split_fields(line, ',');
  if (f.size() != 5) {
    throw ParseError("convergence row needs 5 fields, got " +
                     std::to_string(f.size()));
  }
  ConvergenceEvent e{};
  e.nse = parse_int_token<uint64_t>(f[0], "nse");
  e.elapsed_seconds = parse_double_token(f[1], "elapsed_seconds");
  e.psl_best = parse_int_token<int32_t>(f[2], "psl_best");
  e.phase_index = parse_int_token<uint32_t>(f[3], "phase_index");
  e.kind = event_kind_from_string(f[4]);
  return e;
}

void append_convergence_csv(const std::string& path,
                            const ConvergenceEvent& event) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open '" + path + "' for appending");
  if (out.tellp() == std::ofstream::pos_type(0)) {
    out << kConvergenceCsvHeader << '\n';
  }
  out << format_convergence_row(event) << '\n';
  out.flush();
  if (!out.good()) throw IoError("write failure on '" + path + "'");
}

}  // namespace pslopt::io
