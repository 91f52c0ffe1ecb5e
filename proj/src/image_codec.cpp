// Copyright 2026 the mts-tracker authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mts/image_codec.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include <jpeglib.h>
#include <png.h>

namespace mts {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.string().c_str(), mode));
    if (!f) throw std::runtime_error("cannot open file: " + path.string());
    return f;
}

uint8_t quantize(float v) {
    const float c = std::clamp(v, 0.0f, 1.0f);
    return static_cast<uint8_t>(std::lround(c * 255.0f));
}

Image load_png_file(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png: allocation failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png: allocation failure");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("png: failed to decode " + path.string());
    }
    png_init_io(png, f.get());
    png_read_info(png, info);

    // Normalize everything to 8-bit RGB.
    png_set_strip_16(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    const int rows = static_cast<int>(png_get_image_height(png, info));
    const int cols = static_cast<int>(png_get_image_width(png, info));
    RgbImage rgb;
    rgb.rows = rows;
    rgb.cols = cols;
    rgb.data.resize(static_cast<size_t>(rows) * cols * 3);
    std::vector<png_bytep> row_ptrs(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r) row_ptrs[static_cast<size_t>(r)] = rgb.data.data() + static_cast<size_t>(r) * cols * 3;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return to_grayscale(rgb);
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(err->jump, 1);
}

Image load_jpeg_file(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw std::runtime_error("jpeg: failed to decode " + path.string());
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RgbImage rgb;
    rgb.rows = static_cast<int>(cinfo.output_height);
    rgb.cols = static_cast<int>(cinfo.output_width);
    rgb.data.resize(static_cast<size_t>(rgb.rows) * rgb.cols * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = rgb.data.data() + static_cast<size_t>(cinfo.output_scanline) * rgb.cols * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return to_grayscale(rgb);
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") return load_png_file(path);
    if (ext == ".jpg" || ext == ".jpeg") return load_jpeg_file(path);
    throw std::runtime_error("unsupported image format: " + path.string());
}

void save_png(const std::filesystem::path& path, const Image& image) {
    if (image.rows < 1 || image.cols < 1) throw std::invalid_argument("save_png: empty image");
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png: allocation failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png: allocation failure");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("png: failed to encode " + path.string());
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.cols), static_cast<png_uint_32>(image.rows), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<uint8_t> row(static_cast<size_t>(image.cols));
    for (int r = 0; r < image.rows; ++r) {
        for (int c = 0; c < image.cols; ++c) row[static_cast<size_t>(c)] = quantize(image.at(r, c));
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_jpeg(const std::filesystem::path& path, const Image& image) {
    if (image.rows < 1 || image.cols < 1) throw std::invalid_argument("save_jpeg: empty image");
    FilePtr f = open_file(path, "wb");
    jpeg_compress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_compress(&cinfo);
        throw std::runtime_error("jpeg: failed to encode " + path.string());
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, f.get());
    cinfo.image_width = static_cast<JDIMENSION>(image.cols);
    cinfo.image_height = static_cast<JDIMENSION>(image.rows);
    cinfo.input_components = 1;
    cinfo.in_color_space = JCS_GRAYSCALE;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, 95, TRUE);
    jpeg_start_compress(&cinfo, TRUE);

    std::vector<uint8_t> row(static_cast<size_t>(image.cols));
    while (cinfo.next_scanline < cinfo.image_height) {
        for (int c = 0; c < image.cols; ++c) row[static_cast<size_t>(c)] = quantize(image.at(static_cast<int>(cinfo.next_scanline), c));
        JSAMPROW rp = row.data();
        jpeg_write_scanlines(&cinfo, &rp, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
}

Image draw_box(const Image& image, const BoundingBox& box, float value) {
    Image out = image;
    const int x0 = std::clamp(static_cast<int>(std::lround(box.x)), 0, image.cols - 1);
    const int y0 = std::clamp(static_cast<int>(std::lround(box.y)), 0, image.rows - 1);
    const int x1 = std::clamp(static_cast<int>(std::lround(box.x + box.w)) - 1, 0, image.cols - 1);
    const int y1 = std::clamp(static_cast<int>(std::lround(box.y + box.h)) - 1, 0, image.rows - 1);
    for (int c = x0; c <= x1; ++c) {
        out.at(y0, c) = value;
        out.at(y1, c) = value;
    }
    for (int r = y0; r <= y1; ++r) {
        out.at(r, x0) = value;
        out.at(r, x1) = value;
    }
    return out;
}

}  // namespace mts
