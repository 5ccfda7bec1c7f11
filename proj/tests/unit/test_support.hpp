#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "rce/image.hpp"
#include "rce/rng.hpp"

namespace rce::testing {

/// Directory removed on destruction.
class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("rce_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::permissions(path_, std::filesystem::perms::owner_all, std::filesystem::perm_options::add, ec);
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

  private:
    std::filesystem::path path_;
};

inline Image random_image(std::size_t width, std::size_t height, RngStream& rng) {
    std::vector<std::uint8_t> bytes(width * height * 3);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.next() >> 56);
    return Image(width, height, std::move(bytes));
}

inline Image random_image(RngStream& rng, std::size_t max_side = 48) {
    const std::size_t w = 1 + rng.below(max_side);
    const std::size_t h = 1 + rng.below(max_side);
    return random_image(w, h, rng);
}

/// Pixel value row * width + col in every channel (mod 256).
inline Image ramp_image(std::size_t width, std::size_t height) {
    Image img(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const auto v = static_cast<std::uint8_t>((y * width + x) & 0xFF);
            img.set(x, y, {v, v, v});
        }
    }
    return img;
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace rce::testing
