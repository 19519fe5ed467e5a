#include "microrep/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "microrep/error.hpp"

namespace microrep {

namespace {

constexpr char kMagic[8] = {'M', 'R', 'E', 'P', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

uint8_t arch_tag(Arch arch) {
    switch (arch) {
        case Arch::lstm: return 0;
        case Arch::rnn: return 1;
        case Arch::gru: return 2;
    }
    throw ContractError("unreachable arch value");
}

Arch arch_from_tag(uint8_t tag) {
    switch (tag) {
        case 0: return Arch::lstm;
        case 1: return Arch::rnn;
        case 2: return Arch::gru;
    }
    throw ParseError("checkpoint: unknown architecture tag " + std::to_string(tag));
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary), path_(path) {
        if (!out_) throw IoError("cannot write checkpoint: " + path);
    }

    void bytes(const void* p, size_t n) { out_.write(static_cast<const char*>(p), long(n)); }
    void u8(uint8_t v) { bytes(&v, 1); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) u8(uint8_t(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) u8(uint8_t(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
    void matrix(const Matrix& m) {
        for (const double v : m.values()) f64(v);
    }
    void close() {
        out_.flush();
        if (!out_) throw IoError("failed writing checkpoint: " + path_);
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot read checkpoint: " + path);
    }

    void bytes(void* p, size_t n) {
        in_.read(static_cast<char*>(p), long(n));
        if (in_.gcount() != long(n)) throw ParseError("checkpoint: truncated file");
    }
    uint8_t u8() {
        uint8_t v;
        bytes(&v, 1);
        return v;
    }
    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(u8()) << (8 * i);
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(u8()) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    Matrix matrix(size_t rows, size_t cols) {
        Matrix m(rows, cols);
        for (double& v : m.values()) v = f64();
        return m;
    }
    void expect_eof() {
        char extra;
        in_.read(&extra, 1);
        if (!in_.eof()) throw ParseError("checkpoint: trailing bytes after weights");
    }

private:
    std::ifstream in_;
};

} // namespace

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path) {
    const ModelParams& p = checkpoint.params;
    Writer w(path);
    w.bytes(kMagic, sizeof kMagic);
    w.u32(kVersion);
    w.u8(arch_tag(p.arch));
    w.u8(p.mask_stop ? 1 : 0);
    w.u8(p.embedding.trainable ? 1 : 0);
    w.u8(0);
    w.u64(p.embedding.values.rows());
    w.u64(p.input_dim);
    w.u64(p.hidden_size);
    w.u64(checkpoint.max_len);
    w.u64(checkpoint.vocab_hash);
    w.matrix(p.embedding.values);
    for (const auto& m : p.W) w.matrix(m);
    for (const auto& m : p.U) w.matrix(m);
    for (const auto& m : p.b) w.matrix(m);
    w.matrix(p.W_y);
    w.matrix(p.b_y);
    w.close();
}

Checkpoint load_checkpoint(const std::string& path) {
    Reader r(path);
    char magic[8];
    r.bytes(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw ParseError("checkpoint: bad magic in " + path);
    const uint32_t version = r.u32();
    if (version != kVersion)
        throw ParseError("checkpoint: unsupported version " + std::to_string(version));

    Checkpoint ck;
    ModelParams& p = ck.params;
    p.arch = arch_from_tag(r.u8());
    p.mask_stop = r.u8() != 0;
    const bool trainable = r.u8() != 0;
    r.u8();  // filler
    const uint64_t vocab_rows = r.u64();
    p.input_dim = r.u64();
    p.hidden_size = r.u64();
    ck.max_len = r.u64();
    ck.vocab_hash = r.u64();
    if (vocab_rows < 2 || p.input_dim == 0 || p.hidden_size == 0 || ck.max_len == 0)
        throw ParseError("checkpoint: implausible dimensions");

    p.embedding.values = r.matrix(vocab_rows, p.input_dim);
    p.embedding.dim = p.input_dim;
    p.embedding.trainable = trainable;
    const size_t gates = gate_count(p.arch);
    p.W.reserve(gates);
    p.U.reserve(gates);
    p.b.reserve(gates);
    for (size_t k = 0; k < gates; ++k) p.W.push_back(r.matrix(p.hidden_size, p.input_dim));
    for (size_t k = 0; k < gates; ++k) p.U.push_back(r.matrix(p.hidden_size, p.hidden_size));
    for (size_t k = 0; k < gates; ++k) p.b.push_back(r.matrix(1, p.hidden_size));
    p.W_y = r.matrix(2, p.hidden_size);
    p.b_y = r.matrix(1, 2);
    r.expect_eof();
    return ck;
}

} // namespace microrep
