#include "proftune/runstore.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>

#include "proftune/text.hpp"

namespace fs = std::filesystem;

namespace proftune {

std::uint64_t RunKey::hash() const {
  std::string s = problem;
  s += '\0';
  s += text::hex64(config);
  s += text::hex64(settings);
  return text::fnv1a(s);
}

std::string RunKey::hex() const { return text::hex64(hash()); }

std::uint64_t settings_fingerprint(const SolverSettings& s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.11e;%lld;%llu", s.epsilon,
                static_cast<long long>(s.max_evaluations),
                static_cast<unsigned long long>(s.seed));
  return text::fnv1a(buf);
}

RunKey make_run_key(const std::string& problem, const ParamConfig& q, const SolverSettings& s) {
  return RunKey{problem, fingerprint(q), settings_fingerprint(s)};
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  static std::atomic<std::uint64_t> counter{0};
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += ".tmp." + text::hex64(text::mix64(tid ^ counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move file into place: " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunStore::RunStore(fs::path root, std::ostream* warnings)
    : root_(std::move(root)), warnings_(warnings) {
  std::error_code ec;
  fs::create_directories(root_ / "traces", ec);
  fs::create_directories(root_ / "sessions", ec);
  if (ec) throw std::runtime_error("cannot create store at " + root_.string());
  if (fs::exists(root_ / "manifest.txt")) {
    std::istringstream in(read_file(root_ / "manifest.txt"));
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) manifest_lines_.insert(line);
  }
}

fs::path RunStore::trace_path(const std::string& hex_key) const {
  return root_ / "traces" / (hex_key + ".csv");
}

fs::path RunStore::session_path(const std::string& name) const {
  return root_ / "sessions" / (name + ".txt");
}

void RunStore::append_manifest(const std::string& line) {
  std::lock_guard lock(mutex_);
  if (!manifest_lines_.insert(line).second) return;
  std::ofstream out(root_ / "manifest.txt", std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot append to store manifest");
  out << line << '\n';
}

std::optional<RunTrace> RunStore::load(const std::string& hex_key) const {
  const auto path = trace_path(hex_key);
  if (!fs::exists(path)) return std::nullopt;
  try {
    return parse_trace(read_file(path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

RunTrace RunStore::get_or_run(const RunKey& key, const std::function<RunTrace()>& producer) {
  const std::string hex = key.hex();
  const auto path = trace_path(hex);
  if (fs::exists(path)) {
    try {
      RunTrace t = parse_trace(read_file(path));
      if (t.problem == key.problem && t.config_fingerprint == key.config) return t;
      throw std::invalid_argument("trace identity does not match its key");
    } catch (const std::exception& e) {
      if (warnings_) {
        std::lock_guard lock(mutex_);
        *warnings_ << "warning: discarding corrupt trace " << path.string() << ": " << e.what()
                   << '\n';
      }
    }
  }
  RunTrace t = producer();
  write_file_atomic(path, format_trace(t));
  append_manifest("trace " + hex + ' ' + key.problem + ' ' + text::hex64(key.config) + ' ' +
                  text::hex64(key.settings) + " traces/" + hex + ".csv");
  return t;
}

RunProvider RunStore::provider() {
  return [this](const Problem& p, const ParamConfig& q, const SolverSettings& s) {
    return get_or_run(make_run_key(p.name, q, s), [&] { return solve(p, q, s); });
  };
}

fs::path RunStore::save_session(const TrainingResult& result, const std::string& name,
                                bool force) {
  const auto path = session_path(name);
  proftune::save_session(result, path, force);
  append_manifest("session " + name + " sessions/" + name + ".txt");
  return path;
}

void save_session(const TrainingResult& result, const fs::path& path, bool force) {
  if (!force && fs::exists(path))
    throw std::runtime_error("refusing to overwrite " + path.string() + " (use --force)");
  std::ostringstream os;
  write_session(os, result);
  write_file_atomic(path, os.str());
}

TrainingResult load_session(const fs::path& path) { return parse_session(read_file(path)); }

}  // namespace proftune
