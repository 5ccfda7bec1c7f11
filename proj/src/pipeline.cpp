#include "rce/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "rce/codec.hpp"
#include "rce/digest.hpp"
#include "rce/rng.hpp"

namespace fs = std::filesystem;

namespace rce {

void CorpusJob::validate() const {
    cfg.validate();
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (passes < 1) throw std::invalid_argument("passes must be >= 1");
    std::error_code ec;
    if (!fs::is_directory(input_root, ec)) throw IoError("input directory does not exist: " + input_root.string());
}

std::string canonical_path(std::string_view path) {
    std::string out(path);
    std::replace(out.begin(), out.end(), '\\', '/');
    while (out.starts_with("./")) out.erase(0, 2);
    return out;
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view source_path, std::uint64_t pass_index) {
    return splitmix64(master_seed ^ fnv1a64(canonical_path(source_path)) ^ pass_index);
}

std::string output_path_for(std::string_view source_path, unsigned pass_index) {
    const fs::path src{std::string(source_path)};
    fs::path out = src.parent_path() / (src.stem().string() + "__rce" + std::to_string(pass_index) + ".png");
    return canonical_path(out.generic_string());
}

namespace {

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

bool is_within(const fs::path& p, const fs::path& dir) {
    if (dir.empty()) return false;
    const auto rel = p.lexically_relative(dir);
    return !rel.empty() && *rel.begin() != "..";
}

// Decode without the absolute path in the message so warnings do not depend on where the corpus lives.
Image load_source(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed");
    return decode_image(bytes);
}

struct SourceOutcome {
    std::vector<ManifestEntry> entries;
    std::optional<ManifestWarning> warning;
    std::exception_ptr failure;
};

}  // namespace

std::vector<std::string> list_corpus(const fs::path& root, const fs::path& exclude) {
    std::vector<std::string> found;
    const fs::path abs_root = fs::weakly_canonical(root);
    const fs::path abs_exclude = exclude.empty() ? fs::path{} : fs::weakly_canonical(exclude);
    for (auto it = fs::recursive_directory_iterator(abs_root); it != fs::recursive_directory_iterator(); ++it) {
        if (!abs_exclude.empty() && (it->path() == abs_exclude || is_within(it->path(), abs_exclude))) {
            if (it->is_directory()) it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file() || !has_image_extension(it->path())) continue;
        found.push_back(canonical_path(it->path().lexically_relative(abs_root).generic_string()));
    }
    std::sort(found.begin(), found.end());
    return found;
}

Manifest run_corpus(const CorpusJob& job) {
    job.validate();
    std::error_code ec;
    fs::create_directories(job.output_root, ec);
    if (ec || !fs::is_directory(job.output_root)) {
        throw IoError("cannot create output directory " + job.output_root.string() + ": " + ec.message());
    }

    const auto sources = list_corpus(job.input_root, job.output_root);
    const std::size_t planned = sources.size() * job.passes;

    // Create every output directory up front so workers only write files.
    std::set<std::string> dirs;
    for (const auto& src : sources) dirs.insert(fs::path(src).parent_path().generic_string());
    for (const auto& dir : dirs) {
        if (dir.empty()) continue;
        fs::create_directories(job.output_root / dir, ec);
        if (ec) throw PipelineError("cannot create " + (job.output_root / dir).string() + ": " + ec.message(), 0, planned);
    }

    std::vector<SourceOutcome> outcomes(sources.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> written{0};
    std::atomic<bool> abort{false};

    auto work = [&] {
        for (std::size_t idx = next++; idx < sources.size() && !abort; idx = next++) {
            const std::string& rel = sources[idx];
            SourceOutcome& outcome = outcomes[idx];
            std::optional<Image> source;
            try {
                source = load_source(job.input_root / rel);
            } catch (const std::exception& e) {
                outcome.warning = ManifestWarning{rel, std::string("unreadable image: ") + e.what()};
                continue;
            }
            try {
                for (unsigned pass = 0; pass < job.passes; ++pass) {
                    RngStream rng(derive_stream_seed(job.master_seed, rel, pass));
                    RceResult result = apply_rce(*source, job.cfg, rng);
                    ManifestEntry entry;
                    entry.source_path = rel;
                    entry.pass_index = pass;
                    entry.output_path = output_path_for(rel, pass);
                    entry.record = std::move(result.record);
                    entry.content_digest = content_digest(result.image);
                    save_image(result.image, job.output_root / entry.output_path);
                    ++written;
                    outcome.entries.push_back(std::move(entry));
                }
            } catch (...) {
                outcome.failure = std::current_exception();
                abort = true;
            }
        }
    };

    const std::size_t thread_count = std::min<std::size_t>(job.workers, std::max<std::size_t>(sources.size(), 1));
    if (thread_count <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(work);
    }

    for (const auto& outcome : outcomes) {
        if (!outcome.failure) continue;
        try {
            std::rethrow_exception(outcome.failure);
        } catch (const std::exception& e) {
            throw PipelineError(e.what(), written.load(), planned);
        }
    }

    Manifest manifest;
    manifest.cfg = job.cfg;
    manifest.master_seed = job.master_seed;
    manifest.passes = job.passes;
    for (auto& outcome : outcomes) {
        std::move(outcome.entries.begin(), outcome.entries.end(), std::back_inserter(manifest.entries));
        if (outcome.warning) manifest.warnings.push_back(std::move(*outcome.warning));
    }
    write_manifest(manifest, job.output_root / kManifestFileName);
    return manifest;
}

Image replay(const ManifestEntry& entry, const fs::path& input_root, const RceConfig& cfg) {
    const Image source = load_image(input_root / entry.source_path);
    RngStream rng(entry.record.stream_seed);
    RceResult result = apply_rce(source, cfg, rng);
    const std::uint64_t digest = content_digest(result.image);
    if (digest != entry.content_digest) {
        throw DigestMismatch("replay of " + entry.output_path + " hashed to " + to_hex(digest) + ", manifest records " +
                             to_hex(entry.content_digest) + " (source changed or config differs)");
    }
    return std::move(result.image);
}

}  // namespace rce
