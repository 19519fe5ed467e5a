#include "microrep/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "microrep/checkpoint.hpp"
#include "microrep/error.hpp"
#include "microrep/ingest.hpp"
#include "microrep/reputation.hpp"
#include "microrep/resample.hpp"
#include "microrep/rng.hpp"

namespace microrep {

namespace {

ReviewFormat format_for(const std::string& path) {
    return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? ReviewFormat::csv
                                                                      : ReviewFormat::jsonl;
}

PreprocessConfig make_preprocess_config(const RunConfig& cfg) {
    PreprocessConfig pp;
    const std::string stopwords =
        cfg.stopwords_path.empty() ? std::string(MICROREP_DATA_DIR "/stopwords.txt")
                                   : cfg.stopwords_path;
    const std::string lexicon = cfg.pos_lexicon_path.empty()
                                    ? std::string(MICROREP_DATA_DIR "/pos_lexicon.tsv")
                                    : cfg.pos_lexicon_path;
    pp.stopword_list = load_stopwords(stopwords);
    pp.pos_lexicon = load_pos_lexicon(lexicon);
    pp.pos_filter_enabled = cfg.pos_filter;
    pp.stemming_enabled = cfg.stemming;
    return pp;
}

std::vector<ReviewRecord> load_filtered(const RunConfig& cfg, std::ostream& log) {
    if (cfg.reviews_path.empty())
        throw ArgumentError("no reviews file configured (key `reviews` or --reviews)");
    const auto reviews = load_reviews(cfg.reviews_path, format_for(cfg.reviews_path));
    FilterResult filtered = filter_invalid(reviews);
    log << "loaded " << reviews.size() << " reviews (" << filtered.rejected.size()
        << " rejected by the validity filter)\n";
    if (filtered.valid.empty())
        throw ValidationError("no review survived the validity filter");
    return std::move(filtered.valid);
}

std::vector<PaddedSample> encode_records(const std::vector<ReviewRecord>& records,
                                         const PreprocessConfig& pp, const Vocabulary& vocab,
                                         size_t max_len, bool require_labels) {
    std::vector<PaddedSample> out;
    out.reserve(records.size());
    for (const auto& record : records) {
        if (require_labels && !record.label)
            throw ValidationError("review " + record.id + " has no label");
        PaddedSample sample = encode_and_pad(preprocess_pipeline(record, pp), vocab, max_len);
        if (record.label) sample.label = *record.label;
        out.push_back(std::move(sample));
    }
    return out;
}

MetricsReport report_for(const ModelParams& params, const std::vector<PaddedSample>& samples) {
    const std::vector<Prediction> predictions = predict(samples, params);
    std::vector<Sentiment> preds, golds;
    preds.reserve(samples.size());
    golds.reserve(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        preds.push_back(predictions[i].label);
        golds.push_back(samples[i].label);
    }
    return per_class_report(preds, golds);
}

nlohmann::ordered_json report_json(const MetricsReport& report) {
    return nlohmann::ordered_json::parse(report_to_json(report));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << text;
    if (!out) throw IoError("failed writing file: " + path);
}

std::string out_file(const RunConfig& cfg, const char* name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void check_vocab_hash(const Checkpoint& ck, const Vocabulary& vocab,
                      const std::string& vocab_path) {
    if (vocabulary_hash(vocab) != ck.vocab_hash)
        throw ValidationError("vocabulary " + vocab_path +
                              " does not match the checkpoint's vocabulary hash");
}

} // namespace

void run_synth(const CorpusSpec& spec, const std::string& out_path, std::ostream& log) {
    const auto corpus = generate_synthetic_corpus(spec);
    save_reviews_jsonl(corpus, out_path);
    log << "wrote " << corpus.size() << " synthetic reviews to " << out_path << "\n";
}

void run_preprocess(const RunConfig& cfg, const std::string& out_path, std::ostream& log) {
    const auto valid = load_filtered(cfg, log);
    const PreprocessConfig pp = make_preprocess_config(cfg);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write tokens file: " + out_path);
    for (const auto& record : valid) {
        const TokenSequence tokens = preprocess_pipeline(record, pp);
        nlohmann::ordered_json j;
        j["id"] = record.id;
        j["tokens"] = tokens.tokens;
        out << j.dump() << "\n";
    }
    if (!out) throw IoError("failed writing tokens file: " + out_path);
    log << "preprocessed " << valid.size() << " reviews into " << out_path << "\n";
}

TrainingArtifacts run_training(const RunConfig& cfg, std::ostream& log) {
    validate(cfg.train);
    if (cfg.train_ratio <= 0.0 || cfg.val_ratio < 0.0 ||
        cfg.train_ratio + cfg.val_ratio >= 1.0)
        throw ArgumentError("train_ratio/val_ratio must satisfy 0 < train, 0 <= val, "
                            "train + val < 1");

    const auto valid = load_filtered(cfg, log);
    const DatasetSplit split = split_dataset(valid, cfg.train_ratio, cfg.val_ratio,
                                             mix_seed(cfg.train.seed, kSplitStream));
    log << "split: " << split.train.size() << " train / " << split.validation.size()
        << " validation / " << split.test.size() << " test\n";
    if (split.train.empty() || split.test.empty())
        throw ValidationError("split produced an empty train or test set");

    const PreprocessConfig pp = make_preprocess_config(cfg);
    std::vector<TokenSequence> train_tokens;
    train_tokens.reserve(split.train.size());
    for (const auto& record : split.train)
        train_tokens.push_back(preprocess_pipeline(record, pp));
    const Vocabulary vocab = build_vocabulary(train_tokens, cfg.min_freq);
    log << "vocabulary: " << vocab.size() << " entries (min_freq=" << cfg.min_freq << ")\n";

    GloveMap glove;
    if (!cfg.glove_path.empty()) {
        glove = load_glove(cfg.glove_path, cfg.embedding_dim);
        log << "glove: " << glove.size() << " vectors of dim " << cfg.embedding_dim << "\n";
    }
    const EmbeddingMatrix embedding = build_embedding_matrix(
        vocab, glove, cfg.embedding_dim, mix_seed(cfg.train.seed, kEmbedStream));

    const auto train_samples =
        encode_records(split.train, pp, vocab, cfg.train.max_len, true);
    const auto val_samples =
        encode_records(split.validation, pp, vocab, cfg.train.max_len, true);
    const auto test_samples = encode_records(split.test, pp, vocab, cfg.train.max_len, true);

    TrainResult result =
        train(train_samples, val_samples, embedding, cfg.train, cfg.timing, &log);

    TrainingArtifacts artifacts;
    artifacts.vocab_path = out_file(cfg, "vocab.tsv");
    save_vocabulary(vocab, artifacts.vocab_path);
    artifacts.checkpoint_path = out_file(cfg, "checkpoint.bin");
    save_checkpoint({result.params, cfg.train.max_len, vocabulary_hash(vocab)},
                    artifacts.checkpoint_path);
    artifacts.curve_path = out_file(cfg, "curve.csv");
    save_curve_csv(result.curve, artifacts.curve_path);

    const MetricsReport test_report = report_for(result.params, test_samples);
    const MetricsReport val_report = report_for(result.params, val_samples);
    nlohmann::ordered_json j;
    j["arch"] = to_string(cfg.train.arch);
    j["resampling"] = to_string(cfg.train.resampling);
    j["seed"] = cfg.train.seed;
    j["test"] = report_json(test_report);
    j["validation"] = report_json(val_report);
    artifacts.metrics_path = out_file(cfg, "metrics.json");
    write_text(artifacts.metrics_path, j.dump(2) + "\n");

    log << "\ntest-set classification report:\n"
        << render_report(test_report, cfg.percent)
        << "\nvalidation-set classification report:\n"
        << render_report(val_report, cfg.percent);
    log << "\nartifacts written to " << cfg.out_dir << ": checkpoint.bin, vocab.tsv, "
        << "curve.csv, metrics.json\n";
    return artifacts;
}

void run_eval_balanced(const RunConfig& cfg, const std::string& checkpoint_path,
                       const std::string& vocab_path, size_t n_per_class, uint64_t seed,
                       std::ostream& log) {
    if (n_per_class == 0) throw ArgumentError("n_per_class must be >= 1");
    const Checkpoint ck = load_checkpoint(checkpoint_path);
    const Vocabulary vocab = load_vocabulary(vocab_path);
    check_vocab_hash(ck, vocab, vocab_path);

    const auto valid = load_filtered(cfg, log);
    const PreprocessConfig pp = make_preprocess_config(cfg);
    const auto samples = encode_records(valid, pp, vocab, ck.max_len, true);

    const MetricsReport raw_report = report_for(ck.params, samples);
    const auto balanced = balanced_resample(samples, n_per_class, seed);
    const MetricsReport balanced_report = report_for(ck.params, balanced);

    log << "\nraw test set (" << samples.size() << " reviews):\n"
        << render_report(raw_report, cfg.percent);
    log << "\nbalanced-test protocol (" << n_per_class
        << " per class, oversampled with replacement, seed " << seed << "):\n"
        << render_report(balanced_report, cfg.percent);

    nlohmann::ordered_json j;
    j["protocol"] = "balanced-test";
    j["n_per_class"] = n_per_class;
    j["seed"] = seed;
    j["raw"] = report_json(raw_report);
    j["balanced"] = report_json(balanced_report);
    write_text(out_file(cfg, "eval_balanced.json"), j.dump(2) + "\n");
    log << "\nwrote " << cfg.out_dir << "/eval_balanced.json\n";
}

double run_gradcheck(Arch arch, uint64_t seed, double eps, bool corrupt_first_gate,
                     std::ostream& log) {
    constexpr size_t kVocab = 20, kDim = 8, kHidden = 6, kMaxLen = 5;

    // Word-vector-scale embeddings keep every weight gradient well above the
    // finite-difference noise floor; tiny inputs would drown the smallest
    // input-weight gradients in roundoff.
    EmbeddingMatrix embedding;
    embedding.dim = kDim;
    embedding.trainable = true;
    embedding.values = Matrix(kVocab, kDim);
    for (size_t row = 1; row < kVocab; ++row) {
        SplitMix64 rng(mix_seed(seed, row));
        for (size_t d = 0; d < kDim; ++d)
            embedding.values(row, d) = rng.next_double(-0.8, 0.8);
    }

    ModelParams params =
        init_params(arch, embedding, kHidden, mix_seed(seed, kInitStream), true);

    // Four samples with mixed lengths so pad masking is exercised too.
    const size_t lengths[4] = {kMaxLen, 3, 4, kMaxLen};
    SplitMix64 rng(mix_seed(seed, kResampleStream));
    std::vector<PaddedSample> batch(4);
    for (size_t bi = 0; bi < 4; ++bi) {
        batch[bi].indices.assign(kMaxLen, Vocabulary::kPadIndex);
        for (size_t t = 0; t < lengths[bi]; ++t)
            batch[bi].indices[t] = 1 + rng.next_below(kVocab - 1);
        batch[bi].label = bi % 2 == 0 ? Sentiment::positive : Sentiment::negative;
        batch[bi].source_id = "gradcheck-" + std::to_string(bi);
    }

    const double err = gradient_check(params, batch, eps, corrupt_first_gate);
    char line[128];
    std::snprintf(line, sizeof line, "gradcheck arch=%s eps=%g max_relative_error=%.6e\n",
                  to_string(arch), eps, err);
    log << line;
    return err;
}

void run_reputation(const RunConfig& cfg, const std::string& checkpoint_path,
                    const std::string& vocab_path, std::ostream& log) {
    const Checkpoint ck = load_checkpoint(checkpoint_path);
    const Vocabulary vocab = load_vocabulary(vocab_path);
    check_vocab_hash(ck, vocab, vocab_path);

    if (cfg.reviews_path.empty())
        throw ArgumentError("no reviews file configured (key `reviews` or --reviews)");
    const auto reviews = load_reviews(cfg.reviews_path, format_for(cfg.reviews_path));
    const PreprocessConfig pp = make_preprocess_config(cfg);
    const ReputationOutcome outcome =
        score_providers(reviews, ck.params, vocab, pp, ck.max_len);

    log << render_reputation_table(outcome);
    write_text(out_file(cfg, "reputation.json"), reputation_to_json(outcome));
    log << "wrote " << cfg.out_dir << "/reputation.json\n";
}

} // namespace microrep
