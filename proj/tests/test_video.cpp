#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "gen.hpp"
#include "recur/error.hpp"
#include "recur/video/io.hpp"
#include "recur/video/noise.hpp"
#include "recur/video/synth.hpp"
#include "recur/video/tensor.hpp"

using namespace recur;
namespace fs = std::filesystem;
namespace ts = testsupport;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("recur_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("tensor validation") {
    CHECK_THROWS_AS(make_tensor(0, 2, 3), InvalidInput);
    CHECK_THROWS_AS(make_tensor(2, 0, 3), InvalidInput);
    CHECK_THROWS_AS(make_tensor(2, 2, 0), InvalidInput);
    CHECK_THROWS_AS(make_tensor(2, 2, 2, 0, 1), InvalidInput);
    CHECK_THROWS_AS(make_tensor(2, 2, 2, 30, 0), InvalidInput);

    VideoTensor v = make_tensor(3, 2, 4);
    CHECK(v.data.size() == 24);
    v.data.pop_back();
    CHECK_THROWS_AS(validate(v), InvalidInput);
}

TEST_CASE("rcv round trip is bit exact") {
    std::mt19937_64 rng(2);
    VideoTensor v = ts::random_video(rng, 7, 5, 3);
    v.fps_num = 24000;
    v.fps_den = 1001;
    TempDir tmp;
    std::string path = tmp.file("clip.rcv");
    video::save_rcv(v, path);
    VideoTensor back = video::load_rcv(path);
    CHECK(back.width == v.width);
    CHECK(back.height == v.height);
    CHECK(back.frames == v.frames);
    CHECK(back.fps_num == v.fps_num);
    CHECK(back.fps_den == v.fps_den);
    REQUIRE(back.data.size() == v.data.size());
    for (std::size_t i = 0; i < v.data.size(); ++i) {
        // bit-for-bit, including any negative or denormal values
        CHECK(std::memcmp(&back.data[i], &v.data[i], sizeof(float)) == 0);
    }

    // header is exactly 32 bytes: magic, five u32 fields, zero padding
    std::string bytes = read_bytes(path);
    REQUIRE(bytes.size() == 32 + v.data.size() * 4);
    CHECK(bytes.substr(0, 4) == "RCV1");
}

TEST_CASE("rcv loader rejects corrupt files") {
    std::mt19937_64 rng(3);
    VideoTensor v = ts::random_video(rng, 3, 2, 2);
    TempDir tmp;
    std::string path = tmp.file("clip.rcv");
    video::save_rcv(v, path);
    std::string bytes = read_bytes(path);

    std::string bad = bytes;
    bad[0] = 'X';
    write_bytes(tmp.file("magic.rcv"), bad);
    CHECK_THROWS_AS(video::load_rcv(tmp.file("magic.rcv")), FormatError);

    write_bytes(tmp.file("short.rcv"), bytes.substr(0, 16));
    CHECK_THROWS_AS(video::load_rcv(tmp.file("short.rcv")), FormatError);

    write_bytes(tmp.file("trunc.rcv"), bytes.substr(0, bytes.size() - 5));
    CHECK_THROWS_AS(video::load_rcv(tmp.file("trunc.rcv")), FormatError);

    CHECK_THROWS_AS(video::load_rcv(tmp.file("missing.rcv")), InvalidInput);
}

TEST_CASE("pgm directory loads sorted and scaled") {
    TempDir tmp;
    // 2x2 frames; a comment and odd whitespace exercise the header reader
    write_bytes(tmp.file("b_frame.pgm"), "P5\n# second frame\n2 2\n255\n\x04\x08\x0c\x10");
    write_bytes(tmp.file("a_frame.pgm"), std::string("P5  2\t2\n255\n") +
                                             std::string("\x00\x01\x02\x03", 4));
    write_bytes(tmp.file("notes.txt"), "ignored");

    VideoTensor v = video::load_pgm_dir(tmp.path.string());
    REQUIRE(v.frames == 2);
    REQUIRE(v.width == 2);
    REQUIRE(v.height == 2);
    CHECK(v.at(0, 0, 0) == 0.0f);
    CHECK(v.at(0, 0, 1) == doctest::Approx(1.0 / 255.0));
    CHECK(v.at(1, 0, 0) == doctest::Approx(4.0 / 255.0));
    CHECK(v.at(1, 1, 1) == doctest::Approx(16.0 / 255.0));
}

TEST_CASE("pgm loader rejects what it cannot represent") {
    TempDir tmp;
    write_bytes(tmp.file("a.pgm"), "P2\n2 2\n255\n0 1 2 3\n");
    CHECK_THROWS_AS(video::load_pgm_dir(tmp.path.string()), FormatError);

    TempDir tmp2;
    write_bytes(tmp2.file("a.pgm"), std::string("P5\n2 2\n65535\n") + std::string(8, 'x'));
    CHECK_THROWS_AS(video::load_pgm_dir(tmp2.path.string()), FormatError);

    TempDir tmp3;  // frame size changes between files
    write_bytes(tmp3.file("a.pgm"), std::string("P5\n2 2\n255\n") + std::string(4, 'x'));
    write_bytes(tmp3.file("b.pgm"), std::string("P5\n3 2\n255\n") + std::string(6, 'x'));
    CHECK_THROWS_AS(video::load_pgm_dir(tmp3.path.string()), FormatError);

    TempDir tmp4;  // no frames at all
    CHECK_THROWS_AS(video::load_pgm_dir(tmp4.path.string()), InvalidInput);
}

TEST_CASE("load_any dispatches on directory versus file") {
    TempDir tmp;
    write_bytes(tmp.file("a.pgm"), std::string("P5\n2 2\n255\n") + std::string(4, 'a'));
    CHECK(video::load_any(tmp.path.string()).frames == 1);

    std::mt19937_64 rng(4);
    VideoTensor v = ts::random_video(rng, 2, 2, 2);
    std::string rcv = tmp.file("v.rcv");
    video::save_rcv(v, rcv);
    CHECK(video::load_any(rcv).frames == 2);
}

TEST_CASE("1d generators store the exact sample values") {
    video::SynthSpec spec;
    spec.kind = video::SynthKind::harmonic_1d;
    spec.frames = 40;
    VideoTensor h = video::synthesize(spec);
    CHECK(h.width == 1);
    CHECK(h.height == 1);
    for (std::uint32_t t = 0; t < 40; ++t) {
        double expect = std::cos(M_PI * t / 5.0) + std::cos(M_PI * t / 15.0);
        CHECK(h.data[t] == float(expect));
    }

    spec.kind = video::SynthKind::quasi_1d;
    VideoTensor q = video::synthesize(spec);
    for (std::uint32_t t = 0; t < 40; ++t) {
        double expect = std::cos(M_PI * t / 5.0) + std::cos(double(t) / 5.0);
        CHECK(q.data[t] == float(expect));
    }
}

TEST_CASE("video generators are deterministic and bounded") {
    for (auto kind : {video::SynthKind::pendulum, video::SynthKind::quasi_disks,
                      video::SynthKind::modulated_pulses, video::SynthKind::white_noise}) {
        video::SynthSpec spec;
        spec.kind = kind;
        spec.frames = 12;
        spec.seed = 9;
        VideoTensor a = video::synthesize(spec);
        VideoTensor b = video::synthesize(spec);
        CHECK(a.width == 64);
        CHECK(a.height == 64);
        CHECK(a.data == b.data);
        for (float x : a.data) {
            CHECK(x >= 0.0f);
            CHECK(x <= 1.0f);
        }
    }

    video::SynthSpec spec;
    spec.kind = video::SynthKind::white_noise;
    spec.frames = 12;
    spec.seed = 9;
    VideoTensor a = video::synthesize(spec);
    spec.seed = 10;
    VideoTensor c = video::synthesize(spec);
    CHECK(a.data != c.data);
}

TEST_CASE("pendulum motion repeats with the requested period") {
    video::SynthSpec spec;
    spec.kind = video::SynthKind::pendulum;
    spec.frames = 60;
    spec.period = 20.0;
    VideoTensor v = video::synthesize(spec);
    std::size_t ppf = v.pixels_per_frame();
    for (std::uint32_t t = 0; t + 20 < 60; ++t)
        for (std::size_t p = 0; p < ppf; ++p)
            CHECK(v.data[t * ppf + p] ==
                  doctest::Approx(v.data[(t + 20) * ppf + p]).epsilon(1e-5).scale(1.0));
}

TEST_CASE("generator argument validation") {
    video::SynthSpec spec;
    spec.frames = 0;
    CHECK_THROWS_AS(video::synthesize(spec), InvalidInput);
    spec.frames = 10;
    spec.period = 1.0;
    CHECK_THROWS_AS(video::synthesize(spec), InvalidInput);
    CHECK_THROWS_AS(video::parse_synth_kind("no_such_kind"), InvalidInput);
    CHECK(video::parse_synth_kind("pendulum") == video::SynthKind::pendulum);
    CHECK(to_string(video::SynthKind::quasi_disks) == "quasi_disks");
}

TEST_CASE("noise level zero is the identity") {
    std::mt19937_64 rng(6);
    VideoTensor v = ts::random_video(rng, 6, 4, 4);
    for (auto model : {video::NoiseModel::blur, video::NoiseModel::awgn,
                       video::NoiseModel::frame_corrupt}) {
        video::NoiseSpec spec;
        spec.model = model;
        spec.level = 0.0;
        VideoTensor out = video::apply_noise(v, spec);
        CHECK(out.data == v.data);
    }
}

TEST_CASE("awgn perturbs with the configured spread, deterministically") {
    std::mt19937_64 rng(7);
    VideoTensor v = ts::random_video(rng, 8, 8, 8);
    video::NoiseSpec spec;
    spec.model = video::NoiseModel::awgn;
    spec.level = 0.05;
    spec.seed = 11;
    VideoTensor a = video::apply_noise(v, spec);
    VideoTensor b = video::apply_noise(v, spec);
    CHECK(a.data == b.data);

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < v.data.size(); ++i) {
        double d = double(a.data[i]) - double(v.data[i]);
        sum += d;
        sumsq += d * d;
    }
    double n = double(v.data.size());
    double sd = std::sqrt(sumsq / n - (sum / n) * (sum / n));
    CHECK(sd == doctest::Approx(0.05).epsilon(0.15));

    spec.seed = 12;
    VideoTensor c = video::apply_noise(v, spec);
    CHECK(a.data != c.data);
}

TEST_CASE("blur below one cell is the identity") {
    std::mt19937_64 rng(8);
    VideoTensor v = ts::random_video(rng, 4, 6, 6);
    video::NoiseSpec spec;
    spec.model = video::NoiseModel::blur;
    spec.level = 1.0;
    CHECK(video::apply_noise(v, spec).data == v.data);
    spec.level = 4.0;
    VideoTensor blurred = video::apply_noise(v, spec);
    CHECK(blurred.data != v.data);
    CHECK(blurred.frames == v.frames);
}

TEST_CASE("frame corruption touches the requested share of frames") {
    std::mt19937_64 rng(9);
    VideoTensor v = ts::random_video(rng, 20, 3, 3);
    video::NoiseSpec spec;
    spec.model = video::NoiseModel::frame_corrupt;
    spec.level = 0.25;
    spec.seed = 5;
    VideoTensor out = video::apply_noise(v, spec);
    std::size_t ppf = v.pixels_per_frame();
    int changed = 0;
    for (std::uint32_t t = 0; t < 20; ++t) {
        bool same = true;
        for (std::size_t p = 0; p < ppf; ++p)
            if (out.data[t * ppf + p] != v.data[t * ppf + p]) same = false;
        if (!same) ++changed;
    }
    CHECK(changed <= 5);
    CHECK(changed >= 1);

    spec.level = 1.5;
    CHECK_THROWS_AS(video::apply_noise(v, spec), InvalidInput);
    spec.level = -0.1;
    CHECK_THROWS_AS(video::apply_noise(v, spec), InvalidInput);
}

TEST_CASE("noise model parsing") {
    CHECK(video::parse_noise_model("awgn") == video::NoiseModel::awgn);
    CHECK(video::parse_noise_model("blur") == video::NoiseModel::blur);
    CHECK(video::parse_noise_model("frame_corrupt") == video::NoiseModel::frame_corrupt);
    CHECK_THROWS_AS(video::parse_noise_model("sparkle"), InvalidInput);
    CHECK(to_string(video::NoiseModel::awgn) == "awgn");
}
