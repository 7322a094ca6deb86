#include "gzio.hpp"

#include <cstdio>
#include <cstring>
#include <vector>

#include "lasnet/errors.hpp"

namespace lasnet::gzio {

GzipWriter::GzipWriter(const std::string& path) : path_(path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open " + path + " for writing");
    file_ = f;
    std::memset(&stream_, 0, sizeof(stream_));
    // windowBits 15+16 selects the gzip container
    if (deflateInit2(&stream_, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK) {
        std::fclose(f);
        throw IoError("deflateInit2 failed for " + path);
    }
    std::memset(&header_, 0, sizeof(header_));
    header_.time = 0;  // reproducible output
    header_.os = 255;  // unknown
    deflateSetHeader(&stream_, &header_);
}

GzipWriter::~GzipWriter() {
    if (!finished_) {
        try {
            finish();
        } catch (...) {
        }
    }
}

void GzipWriter::pump(int flush) {
    do {
        stream_.next_out = out_buf_;
        stream_.avail_out = sizeof(out_buf_);
        const int rc = deflate(&stream_, flush);
        if (rc == Z_STREAM_ERROR) throw IoError("deflate failed for " + path_);
        const std::size_t produced = sizeof(out_buf_) - stream_.avail_out;
        if (produced > 0 &&
            std::fwrite(out_buf_, 1, produced, static_cast<std::FILE*>(file_)) != produced)
            throw IoError("short write to " + path_);
    } while (stream_.avail_out == 0);
}

void GzipWriter::write(std::string_view data) {
    if (finished_) throw IoError("write after finish on " + path_);
    stream_.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    stream_.avail_in = static_cast<uInt>(data.size());
    pump(Z_NO_FLUSH);
}

void GzipWriter::finish() {
    if (finished_) return;
    finished_ = true;
    stream_.next_in = nullptr;
    stream_.avail_in = 0;
    do {
        stream_.next_out = out_buf_;
        stream_.avail_out = sizeof(out_buf_);
        const int rc = deflate(&stream_, Z_FINISH);
        if (rc == Z_STREAM_ERROR) throw IoError("deflate finish failed for " + path_);
        const std::size_t produced = sizeof(out_buf_) - stream_.avail_out;
        if (produced > 0 &&
            std::fwrite(out_buf_, 1, produced, static_cast<std::FILE*>(file_)) != produced)
            throw IoError("short write to " + path_);
        if (rc == Z_STREAM_END) break;
    } while (true);
    deflateEnd(&stream_);
    if (std::fclose(static_cast<std::FILE*>(file_)) != 0)
        throw IoError("close failed for " + path_);
    file_ = nullptr;
}

std::string read_gzip_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open " + path);
    std::vector<unsigned char> compressed;
    unsigned char buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0)
        compressed.insert(compressed.end(), buf, buf + got);
    std::fclose(f);

    z_stream zs;
    std::memset(&zs, 0, sizeof(zs));
    if (inflateInit2(&zs, 15 + 32) != Z_OK)  // accept gzip or zlib
        throw IoError("inflateInit2 failed for " + path);
    zs.next_in = compressed.data();
    zs.avail_in = static_cast<uInt>(compressed.size());
    std::string out;
    int rc = Z_OK;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw IoError("corrupt gzip stream in " + path);
        }
        out.append(reinterpret_cast<char*>(buf), sizeof(buf) - zs.avail_out);
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw IoError("truncated gzip stream in " + path);
    return out;
}

}  // namespace lasnet::gzio
