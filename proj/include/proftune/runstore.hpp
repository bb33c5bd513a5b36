#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include "proftune/params.hpp"
#include "proftune/solver.hpp"
#include "proftune/training.hpp"

namespace proftune {

/// Identity of one solver run.
struct RunKey {
  std::string problem;
  std::uint64_t config = 0;    // fingerprint(q)
  std::uint64_t settings = 0;  // settings_fingerprint(settings)

  std::uint64_t hash() const;
  std::string hex() const;
};

std::uint64_t settings_fingerprint(const SolverSettings& s);
RunKey make_run_key(const std::string& problem, const ParamConfig& q, const SolverSettings& s);

/// Content-addressed store of run traces and training sessions.
///
/// Layout: `<root>/traces/<hex-key>.csv`, `<root>/sessions/<name>.txt` and an
/// append-only `<root>/manifest.txt`. Files are written to a temporary name
/// and renamed into place, so readers never see partial records.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path root, std::ostream* warnings = nullptr);

  const std::filesystem::path& root() const { return root_; }

  /// Returns the stored trace for `key`, or runs `producer`, stores its trace
  /// and returns it. A cached file that fails to parse is reported on the
  /// warning stream, re-produced and overwritten.
  RunTrace get_or_run(const RunKey& key, const std::function<RunTrace()>& producer);

  /// Stored trace by hex key; nullopt when missing or unreadable.
  std::optional<RunTrace> load(const std::string& hex_key) const;

  /// A RunProvider that goes through the store.
  RunProvider provider();

  std::filesystem::path trace_path(const std::string& hex_key) const;
  std::filesystem::path session_path(const std::string& name) const;

  /// Writes the session under sessions/ and records it in the manifest.
  std::filesystem::path save_session(const TrainingResult& result, const std::string& name,
                                     bool force);

 private:
  void append_manifest(const std::string& line);

  std::filesystem::path root_;
  std::ostream* warnings_;
  std::mutex mutex_;
  std::set<std::string> manifest_lines_;
};

/// Writes `contents` to `path` via a temporary file and rename. Throws
/// std::runtime_error when the file cannot be written.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Session document on disk. Refuses to overwrite an existing file unless
/// `force` is set.
void save_session(const TrainingResult& result, const std::filesystem::path& path,
                  bool force = false);
TrainingResult load_session(const std::filesystem::path& path);

}  // namespace proftune
