#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rce/erasing.hpp"
#include "rce/errors.hpp"
#include "rce/image.hpp"

namespace rce {

inline constexpr std::string_view kSpecVersion = "1.0";
inline constexpr std::string_view kManifestFileName = "manifest.jsonl";

struct CorpusJob {
    std::filesystem::path input_root;
    std::filesystem::path output_root;
    RceConfig cfg{};
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
    unsigned passes = 1;

    void validate() const;
};

struct ManifestEntry {
    std::string source_path;  ///< relative to input_root, '/'-separated
    unsigned pass_index = 0;
    std::string output_path;  ///< relative to output_root
    AugmentationRecord record;
    std::uint64_t content_digest = 0;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct ManifestWarning {
    std::string path;
    std::string message;

    friend bool operator==(const ManifestWarning&, const ManifestWarning&) = default;
};

struct Manifest {
    std::string spec_version{kSpecVersion};
    RceConfig cfg{};
    std::uint64_t master_seed = 0;
    unsigned passes = 1;
    std::vector<ManifestEntry> entries;  ///< sorted by (source_path, pass_index)
    std::vector<ManifestWarning> warnings;
};

/// Output write failed mid-run. Files already written are left in place.
class PipelineError : public IoError {
  public:
    PipelineError(const std::string& message, std::size_t outputs_written, std::size_t outputs_planned)
        : IoError(message + " (" + std::to_string(outputs_written) + " of " + std::to_string(outputs_planned) +
                  " outputs written before abort)"),
          written_(outputs_written),
          planned_(outputs_planned) {}

    std::size_t outputs_written() const noexcept { return written_; }
    std::size_t outputs_planned() const noexcept { return planned_; }

  private:
    std::size_t written_;
    std::size_t planned_;
};

/// Replayed pixels do not hash to the recorded digest.
class DigestMismatch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Backslashes become '/', and leading "./" segments are dropped.
std::string canonical_path(std::string_view path);

/// splitmix64(master_seed ^ fnv1a64(canonical_path(path)) ^ pass_index).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view source_path, std::uint64_t pass_index);

/// "<dir>/<stem>__rce<pass>.png" for a canonical source path.
std::string output_path_for(std::string_view source_path, unsigned pass_index);

/// Image files (.png, .jpg, .jpeg, .bmp, any case) under root as sorted
/// canonical relative paths. Anything under `exclude` is skipped.
std::vector<std::string> list_corpus(const std::filesystem::path& root, const std::filesystem::path& exclude = {});

/// Augments every image under input_root `passes` times, writes the PNGs and
/// manifest.jsonl under output_root, and returns the manifest. Unreadable
/// images become warnings. Output is independent of `workers`.
Manifest run_corpus(const CorpusJob& job);

/// Re-runs one entry from its recorded stream seed. Throws DigestMismatch if
/// the result differs from the recorded digest.
Image replay(const ManifestEntry& entry, const std::filesystem::path& input_root, const RceConfig& cfg);

// Manifest serialization (JSON Lines; header line, entries, then warnings).
std::string to_jsonl(const Manifest& manifest);
Manifest parse_manifest(std::string_view jsonl);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace rce
