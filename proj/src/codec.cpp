#include "rce/codec.hpp"

#include <png.h>

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <jpeglib.h>

#include "rce/errors.hpp"

namespace rce {
namespace {

// ---------------------------------------------------------------------------
// PNG
//
// libpng reports errors by longjmp. Everything with a destructor lives in the
// callers below; the setjmp frames only touch caller-owned storage.

struct PngReadCursor {
    std::span<const std::uint8_t> data;
    std::size_t offset = 0;
};

struct PngErrorSink {
    char message[256] = {};
};

void png_error_fn(png_structp png, png_const_charp msg) {
    auto* sink = static_cast<PngErrorSink*>(png_get_error_ptr(png));
    std::snprintf(sink->message, sizeof sink->message, "%s", msg);
    png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

void png_read_fn(png_structp png, png_bytep out, png_size_t length) {
    auto* cursor = static_cast<PngReadCursor*>(png_get_io_ptr(png));
    if (cursor->data.size() - cursor->offset < length) png_error(png, "unexpected end of PNG data");
    std::memcpy(out, cursor->data.data() + cursor->offset, length);
    cursor->offset += length;
}

struct PngDecoded {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    std::vector<std::uint8_t> rgb;
    std::vector<png_bytep> rows;
};

bool png_decode_into(PngReadCursor& cursor, PngDecoded& out, PngErrorSink& sink) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, png_error_fn, png_warning_fn);
    if (png == nullptr) {
        std::snprintf(sink.message, sizeof sink.message, "out of memory");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        std::snprintf(sink.message, sizeof sink.message, "out of memory");
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, &cursor, png_read_fn);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    // High byte only; libpng's alternative (png_set_scale_16) rounds instead.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (bit_depth < 8) png_set_packing(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    if (png_get_rowbytes(png, info) != static_cast<png_size_t>(out.width) * 3) {
        png_error(png, "unexpected row layout after RGB conversion");
    }
    out.rgb.resize(static_cast<std::size_t>(out.width) * out.height * 3);
    out.rows.resize(out.height);
    for (png_uint_32 y = 0; y < out.height; ++y) out.rows[y] = out.rgb.data() + static_cast<std::size_t>(y) * out.width * 3;
    png_read_image(png, out.rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
    PngReadCursor cursor{bytes, 0};
    PngDecoded decoded;
    PngErrorSink sink;
    if (!png_decode_into(cursor, decoded, sink)) throw DecodeError(std::string("corrupt PNG: ") + sink.message);
    return Image(decoded.width, decoded.height, std::move(decoded.rgb));
}

void png_write_fn(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void png_flush_fn(png_structp) {}

bool png_encode_into(const Image& img, std::vector<png_bytep>& rows, std::vector<std::uint8_t>& out,
                     PngErrorSink& sink) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, png_error_fn, png_warning_fn);
    if (png == nullptr) return false;
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_set_write_fn(png, &out, png_write_fn, png_flush_fn);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

// ---------------------------------------------------------------------------
// JPEG (decode only)

struct JpegErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_exit_fn(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

void jpeg_quiet_fn(j_common_ptr, int) {}

struct JpegDecoded {
    JDIMENSION width = 0;
    JDIMENSION height = 0;
    std::vector<std::uint8_t> rgb;
};

bool jpeg_decode_into(std::span<const std::uint8_t> bytes, JpegDecoded& out, JpegErrorManager& err) {
    jpeg_decompress_struct cinfo;
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit_fn;
    err.base.emit_message = jpeg_quiet_fn;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    if (cinfo.output_components != 3) {
        std::snprintf(err.message, sizeof err.message, "unsupported JPEG color layout");
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    out.width = cinfo.output_width;
    out.height = cinfo.output_height;
    out.rgb.resize(static_cast<std::size_t>(out.width) * out.height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * out.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

Image decode_jpeg(std::span<const std::uint8_t> bytes) {
    JpegDecoded decoded;
    JpegErrorManager err;
    if (!jpeg_decode_into(bytes, decoded, err)) throw DecodeError(std::string("corrupt JPEG: ") + err.message);
    return Image(decoded.width, decoded.height, std::move(decoded.rgb));
}

// ---------------------------------------------------------------------------
// BMP (decode only): uncompressed 24/32-bit, 32-bit BI_BITFIELDS with byte
// masks, and 8-bit palettized.

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
           static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

int mask_shift(std::uint32_t mask) {
    switch (mask) {
        case 0x000000FFu: return 0;
        case 0x0000FF00u: return 8;
        case 0x00FF0000u: return 16;
        case 0xFF000000u: return 24;
        default: return -1;
    }
}

Image decode_bmp(std::span<const std::uint8_t> b) {
    constexpr std::size_t kFileHeader = 14;
    if (b.size() < kFileHeader + 40) throw DecodeError("corrupt BMP: truncated header");
    const std::uint32_t pixel_offset = le32(b, 10);
    const std::uint32_t dib_size = le32(b, kFileHeader);
    if (dib_size < 40) throw DecodeError("unsupported BMP: core header");
    const auto raw_width = static_cast<std::int32_t>(le32(b, kFileHeader + 4));
    const auto raw_height = static_cast<std::int32_t>(le32(b, kFileHeader + 8));
    const std::uint16_t bpp = le16(b, kFileHeader + 14);
    const std::uint32_t compression = le32(b, kFileHeader + 16);
    std::uint32_t palette_count = le32(b, kFileHeader + 32);
    if (raw_width <= 0 || raw_height == 0) throw DecodeError("corrupt BMP: bad dimensions");

    const bool top_down = raw_height < 0;
    const std::size_t width = static_cast<std::size_t>(raw_width);
    const std::size_t height = static_cast<std::size_t>(top_down ? -static_cast<std::int64_t>(raw_height) : raw_height);

    int shift_r = 16, shift_g = 8, shift_b = 0;
    if (compression == 3 && bpp == 32) {
        // Masks sit right after the 40-byte info header, whether appended (v3) or embedded (v4/v5).
        const std::size_t masks_at = kFileHeader + 40;
        if (b.size() < masks_at + 12) throw DecodeError("corrupt BMP: truncated bitfields");
        shift_r = mask_shift(le32(b, masks_at));
        shift_g = mask_shift(le32(b, masks_at + 4));
        shift_b = mask_shift(le32(b, masks_at + 8));
        if (shift_r < 0 || shift_g < 0 || shift_b < 0) throw DecodeError("unsupported BMP: non-byte bitfield masks");
    } else if (compression != 0) {
        throw DecodeError("unsupported BMP: compressed pixel data");
    }
    if (bpp != 24 && bpp != 32 && bpp != 8) throw DecodeError("unsupported BMP: " + std::to_string(bpp) + " bits per pixel");

    std::vector<Rgb> palette;
    if (bpp == 8) {
        if (palette_count == 0) palette_count = 256;
        const std::size_t palette_at = kFileHeader + dib_size;
        if (palette_count > 256 || b.size() < palette_at + palette_count * 4) throw DecodeError("corrupt BMP: bad palette");
        for (std::uint32_t i = 0; i < palette_count; ++i) {
            const std::size_t at = palette_at + i * 4;
            palette.push_back({b[at + 2], b[at + 1], b[at]});
        }
    }

    const std::size_t stride = (width * bpp / 8 + 3) & ~std::size_t{3};
    if (pixel_offset > b.size() || (b.size() - pixel_offset) / stride < height) {
        throw DecodeError("corrupt BMP: truncated pixel data");
    }
    Image img(width, height);
    for (std::size_t row = 0; row < height; ++row) {
        const std::size_t y = top_down ? row : height - 1 - row;
        const std::size_t base = pixel_offset + row * stride;
        for (std::size_t x = 0; x < width; ++x) {
            if (bpp == 8) {
                const std::uint8_t idx = b[base + x];
                if (idx >= palette.size()) throw DecodeError("corrupt BMP: palette index out of range");
                img.set(x, y, palette[idx]);
            } else if (bpp == 24) {
                const std::size_t at = base + x * 3;
                img.set(x, y, {b[at + 2], b[at + 1], b[at]});
            } else {
                const std::uint32_t v = le32(b, base + x * 4);
                img.set(x, y, {static_cast<std::uint8_t>(v >> shift_r), static_cast<std::uint8_t>(v >> shift_g),
                               static_cast<std::uint8_t>(v >> shift_b)});
            }
        }
    }
    return img;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

}  // namespace

Image decode_image(std::span<const std::uint8_t> bytes) {
    static constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (bytes.size() >= 8 && std::equal(std::begin(kPngSig), std::end(kPngSig), bytes.begin())) return decode_png(bytes);
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) return decode_jpeg(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') return decode_bmp(bytes);
    throw DecodeError("unsupported image format");
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    // libpng takes non-const row pointers even when writing.
    std::vector<std::uint8_t> pixels(img.bytes().begin(), img.bytes().end());
    std::vector<png_bytep> rows(img.height());
    for (std::size_t y = 0; y < img.height(); ++y) rows[y] = pixels.data() + y * img.width() * 3;
    std::vector<std::uint8_t> out;
    PngErrorSink sink;
    if (!png_encode_into(img, rows, out, sink)) throw IoError(std::string("PNG encode failed: ") + sink.message);
    return out;
}

Image load_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        return decode_image(bytes);
    } catch (const DecodeError& e) {
        throw DecodeError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DecodeError(path.string() + ": " + e.what());
    }
}

void save_image(const Image& img, const std::filesystem::path& path) {
    const auto encoded = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(encoded.data()), static_cast<std::streamsize>(encoded.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace rce
