#include "microrep/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "microrep/error.hpp"

namespace microrep {

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

[[noreturn]] void fail(const std::string& source, size_t line, const std::string& what) {
    throw ParseError(source + ": line " + std::to_string(line) + ": " + what);
}

} // namespace

ConfigMap parse_config_text(const std::string& text, const std::string& source) {
    ConfigMap map;
    std::istringstream in(text);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(source, line_no, "expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(source, line_no, "empty key");
        if (map.count(key)) fail(source, line_no, "duplicate key `" + key + "`");
        map[key] = value;
    }
    return map;
}

ConfigMap load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

namespace {

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ParseError("config key `" + key + "`: expected a boolean, got `" + value + "`");
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
    if (value.empty() || value[0] == '-')
        throw ParseError("config key `" + key + "`: expected a nonnegative integer, got `" +
                         value + "`");
    char* end = nullptr;
    const uint64_t parsed = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ParseError("config key `" + key + "`: expected a nonnegative integer, got `" +
                         value + "`");
    return parsed;
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (value.empty() || end == value.c_str() || *end != '\0')
        throw ParseError("config key `" + key + "`: expected a number, got `" + value + "`");
    return parsed;
}

} // namespace

RunConfig run_config_from_map(const ConfigMap& map) {
    RunConfig cfg;
    for (const auto& [key, value] : map) {
        if (key == "reviews") cfg.reviews_path = value;
        else if (key == "glove") cfg.glove_path = value;
        else if (key == "stopwords") cfg.stopwords_path = value;
        else if (key == "pos_lexicon") cfg.pos_lexicon_path = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "epochs") cfg.train.epochs = parse_u64(key, value);
        else if (key == "lr") cfg.train.adam.lr = parse_double(key, value);
        else if (key == "beta1") cfg.train.adam.beta1 = parse_double(key, value);
        else if (key == "beta2") cfg.train.adam.beta2 = parse_double(key, value);
        else if (key == "eps") cfg.train.adam.eps = parse_double(key, value);
        else if (key == "batch_size") cfg.train.batch_size = parse_u64(key, value);
        else if (key == "seed") cfg.train.seed = parse_u64(key, value);
        else if (key == "max_len") cfg.train.max_len = parse_u64(key, value);
        else if (key == "hidden_size") cfg.train.hidden_size = parse_u64(key, value);
        else if (key == "arch") cfg.train.arch = arch_from_string(value);
        else if (key == "resampling") cfg.train.resampling = resampling_from_string(value);
        else if (key == "mask_stop") cfg.train.mask_stop = parse_bool(key, value);
        else if (key == "fine_tune_embeddings")
            cfg.train.fine_tune_embeddings = parse_bool(key, value);
        else if (key == "knn_k") cfg.train.knn_k = parse_u64(key, value);
        else if (key == "adasyn_beta") cfg.train.adasyn_beta = parse_double(key, value);
        else if (key == "train_ratio") cfg.train_ratio = parse_double(key, value);
        else if (key == "val_ratio") cfg.val_ratio = parse_double(key, value);
        else if (key == "min_freq") cfg.min_freq = parse_u64(key, value);
        else if (key == "embedding_dim") cfg.embedding_dim = parse_u64(key, value);
        else if (key == "pos_filter") cfg.pos_filter = parse_bool(key, value);
        else if (key == "stemming") cfg.stemming = parse_bool(key, value);
        else if (key == "timing") cfg.timing = parse_bool(key, value);
        else if (key == "percent") cfg.percent = parse_bool(key, value);
        else throw ValidationError("unknown config key: " + key);
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return run_config_from_map(load_config(path));
}

} // namespace microrep
