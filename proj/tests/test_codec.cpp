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

#include <doctest.h>

#include <fstream>

#include "mts/image_codec.hpp"
#include "test_support.hpp"

using namespace mts;

namespace {

std::vector<char> file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("png write/read round-trips through 8-bit quantization, bytes deterministic") {
    test::TempDir dir("png");
    const Frame f = test::textured_frame(48, 64, 1234);
    save_png(dir.path() / "a.png", f.image);
    save_png(dir.path() / "b.png", f.image);
    CHECK(file_bytes(dir.path() / "a.png") == file_bytes(dir.path() / "b.png"));

    const Image back = load_image(dir.path() / "a.png");
    REQUIRE(back.rows == 48);
    REQUIRE(back.cols == 64);
    for (size_t i = 0; i < back.data.size(); ++i) {
        CHECK(std::abs(back.data[i] - f.image.data[i]) <= 0.5f / 255.0f + 1e-6f);
    }
}

TEST_CASE("jpeg write/read stays close to the source") {
    test::TempDir dir("jpeg");
    const Frame f = test::textured_frame(40, 56, 77);
    save_jpeg(dir.path() / "a.jpg", f.image);
    const Image back = load_image(dir.path() / "a.jpg");
    REQUIRE(back.rows == 40);
    REQUIRE(back.cols == 56);
    double max_err = 0.0;
    for (size_t i = 0; i < back.data.size(); ++i) {
        max_err = std::max(max_err, static_cast<double>(std::abs(back.data[i] - f.image.data[i])));
    }
    CHECK(max_err <= 0.06);  // DCT loss at quality 95
}

TEST_CASE("unsupported extension is rejected") {
    CHECK_THROWS_AS(load_image("frame.gif"), std::runtime_error);
    CHECK_THROWS_AS(load_image("missing.png"), std::runtime_error);
}

TEST_CASE("draw_box paints a 1-px outline inside the box") {
    Image img(20, 20, 0.0f);
    Frame f;
    f.image = img;
    const Image out = draw_box(img, {5, 5, 6, 6}, 1.0f);
    CHECK(out.at(5, 5) == 1.0f);
    CHECK(out.at(5, 10) == 1.0f);
    CHECK(out.at(10, 7) == 1.0f);
    CHECK(out.at(7, 7) == 0.0f);  // interior untouched
}
