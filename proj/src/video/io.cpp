#include "recur/video/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "recur/error.hpp"

namespace fs = std::filesystem;

namespace recur::video {

namespace {

constexpr std::size_t kHeaderSize = 32;
constexpr char kMagic[4] = {'R', 'C', 'V', '1'};

void put_u32(unsigned char* p, std::uint32_t v) {
    p[0] = v & 0xff;
    p[1] = (v >> 8) & 0xff;
    p[2] = (v >> 16) & 0xff;
    p[3] = (v >> 24) & 0xff;
}

std::uint32_t get_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
           (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

}  // namespace

void save_rcv(const VideoTensor& v, const std::string& path) {
    validate(v);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open for writing: " + path);

    unsigned char header[kHeaderSize] = {0};
    std::memcpy(header, kMagic, 4);
    put_u32(header + 4, v.width);
    put_u32(header + 8, v.height);
    put_u32(header + 12, v.frames);
    put_u32(header + 16, v.fps_num);
    put_u32(header + 20, v.fps_den);
    out.write(reinterpret_cast<const char*>(header), kHeaderSize);

    std::vector<unsigned char> buf(v.data.size() * 4);
    for (std::size_t i = 0; i < v.data.size(); ++i)
        put_u32(buf.data() + 4 * i, std::bit_cast<std::uint32_t>(v.data[i]));
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    if (!out) throw InvalidInput("write failed: " + path);
}

VideoTensor load_rcv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open: " + path);

    unsigned char header[kHeaderSize];
    in.read(reinterpret_cast<char*>(header), kHeaderSize);
    if (in.gcount() != kHeaderSize)
        throw FormatError(path + ": truncated header");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw FormatError(path + ": bad magic, not an RCV1 file");

    VideoTensor v;
    v.width = get_u32(header + 4);
    v.height = get_u32(header + 8);
    v.frames = get_u32(header + 12);
    v.fps_num = get_u32(header + 16);
    v.fps_den = get_u32(header + 20);

    if (v.width == 0 || v.height == 0 || v.frames == 0)
        throw FormatError(path + ": zero dimension in header");
    if (v.fps_num == 0 || v.fps_den == 0)
        throw FormatError(path + ": invalid frame rate in header");
    const std::uint64_t total =
        std::uint64_t(v.width) * std::uint64_t(v.height) * std::uint64_t(v.frames);
    if (total > std::uint64_t(1) << 31)
        throw FormatError(path + ": declared size overflows supported range");

    std::vector<unsigned char> buf(std::size_t(total) * 4);
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (std::size_t(in.gcount()) != buf.size())
        throw FormatError(path + ": truncated payload");

    v.data.resize(std::size_t(total));
    for (std::size_t i = 0; i < v.data.size(); ++i)
        v.data[i] = std::bit_cast<float>(get_u32(buf.data() + 4 * i));
    validate(v);
    return v;
}

namespace {

int pgm_token(std::istream& in) {
    // Reads the next integer token, skipping whitespace and '#' comments.
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) return -1;
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 20) return -1;
        c = in.get();
    }
    return value;
}

void load_pgm_frame(const fs::path& p, std::uint32_t& w, std::uint32_t& h,
                    std::vector<float>& out) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InvalidInput("cannot open: " + p.string());
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5')
        throw FormatError(p.string() + ": not a binary PGM (P5) file");
    int pw = pgm_token(in);
    int ph = pgm_token(in);
    int maxval = pgm_token(in);
    if (pw <= 0 || ph <= 0 || maxval <= 0 || maxval > 255)
        throw FormatError(p.string() + ": unsupported PGM header");
    // exactly one whitespace byte separates header and raster
    w = std::uint32_t(pw);
    h = std::uint32_t(ph);
    std::vector<unsigned char> raw(std::size_t(pw) * std::size_t(ph));
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
    if (std::size_t(in.gcount()) != raw.size())
        throw FormatError(p.string() + ": truncated PGM raster");
    out.resize(raw.size());
    const float scale = 1.0f / float(maxval);
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = float(raw[i]) * scale;
}

}  // namespace

VideoTensor load_pgm_dir(const std::string& dir, std::uint32_t fps_num,
                         std::uint32_t fps_den) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw InvalidInput("not a directory: " + dir);

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".pgm")
            files.push_back(e.path());
    }
    if (files.empty()) throw InvalidInput("no .pgm files in " + dir);
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });

    VideoTensor v;
    v.fps_num = fps_num;
    v.fps_den = fps_den;
    std::vector<float> frame;
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::uint32_t w = 0, h = 0;
        load_pgm_frame(files[i], w, h, frame);
        if (i == 0) {
            v.width = w;
            v.height = h;
            v.data.reserve(frame.size() * files.size());
        } else if (w != v.width || h != v.height) {
            throw FormatError(files[i].string() + ": frame size differs from first frame");
        }
        v.data.insert(v.data.end(), frame.begin(), frame.end());
    }
    v.frames = std::uint32_t(files.size());
    validate(v);
    return v;
}

VideoTensor load_any(const std::string& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) return load_pgm_dir(path);
    return load_rcv(path);
}

}  // namespace recur::video
