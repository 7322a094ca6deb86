#pragma once

// Thin deterministic gzip wrappers over zlib. The gzip header is written with
// a zeroed mtime so identical payloads produce identical files.

#include <string>
#include <string_view>

#include <zlib.h>

namespace lasnet::gzio {

class GzipWriter {
public:
    explicit GzipWriter(const std::string& path);
    ~GzipWriter();
    GzipWriter(const GzipWriter&) = delete;
    GzipWriter& operator=(const GzipWriter&) = delete;

    void write(std::string_view data);
    void finish();

private:
    void pump(int flush);

    std::string path_;
    void* file_ = nullptr;  // FILE*
    z_stream stream_{};
    gz_header header_{};
    bool finished_ = false;
    unsigned char out_buf_[1 << 16];
};

// Inflate a whole gzip file into memory.
std::string read_gzip_file(const std::string& path);

}  // namespace lasnet::gzio
