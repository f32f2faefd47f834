#pragma once

#include <string>

#include "recur/video/tensor.hpp"

namespace recur::video {

// Binary tensor container:
//   byte 0..3   magic "RCV1"
//   byte 4..23  five little-endian u32: width, height, frames, fps_num, fps_den
//   byte 24..31 zero padding (header is exactly 32 bytes)
//   byte 32..   frames*height*width little-endian float32, frame-major
// save followed by load reproduces the tensor bit for bit.
void save_rcv(const VideoTensor& v, const std::string& path);
VideoTensor load_rcv(const std::string& path);

// Loads a directory of binary 8-bit PGM (P5) files, sorted by filename,
// as one tensor with pixel values scaled to [0,1].
VideoTensor load_pgm_dir(const std::string& dir, std::uint32_t fps_num = 30,
                         std::uint32_t fps_den = 1);

// Loads either format: directories go through the PGM reader, files are RCV1.
VideoTensor load_any(const std::string& path);

}  // namespace recur::video
