#include "microrep/cli.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "microrep/config.hpp"
#include "microrep/error.hpp"
#include "microrep/pipeline.hpp"
#include "microrep/reputation.hpp"

namespace microrep {

namespace {

void add_preprocess_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--stopwords", cfg.stopwords_path, "Stopword list file");
    cmd->add_option("--pos-lexicon", cfg.pos_lexicon_path, "POS lexicon file");
    cmd->add_flag("--pos-filter,!--no-pos-filter", cfg.pos_filter,
                  "Keep only nouns/adjectives (plus unknown words)");
    cmd->add_flag("--stemming,!--no-stemming", cfg.stemming, "Apply the Porter stemmer");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    // The config file provides flag defaults, so it must load before the
    // parser runs; explicit flags then override its values.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
    }

    CLI::App app{"Review sentiment classification and provider reputation scoring"};
    app.fallthrough();

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_run_config(config_path);
        app.add_option("--config", config_path, "Flat key = value config file");

        CorpusSpec corpus;
        std::string synth_out;
        CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic review corpus");
        synth->add_option("--n", corpus.n_reviews, "Number of reviews")
            ->capture_default_str();
        synth->add_option("--pos-ratio", corpus.positive_ratio, "Positive class share")
            ->capture_default_str();
        synth->add_option("--seed", corpus.seed, "Generator seed")->capture_default_str();
        synth->add_option("--min-tokens", corpus.min_tokens, "Shortest review length")
            ->capture_default_str();
        synth->add_option("--max-tokens", corpus.max_tokens, "Longest review length")
            ->capture_default_str();
        synth->add_option("--out", synth_out, "Output JSONL path")->required();

        std::string preprocess_out;
        CLI::App* preprocess =
            app.add_subcommand("preprocess", "Tokenize, filter, and stem reviews");
        preprocess->add_option("--reviews", cfg.reviews_path, "Input reviews (JSONL/CSV)");
        preprocess->add_option("--out", preprocess_out, "Output tokens JSONL")->required();
        add_preprocess_flags(preprocess, cfg);

        std::string arch_name = to_string(cfg.train.arch);
        std::string resampling_name = to_string(cfg.train.resampling);
        CLI::App* train_cmd =
            app.add_subcommand("train", "Train a classifier and evaluate the test split");
        train_cmd->add_option("--reviews", cfg.reviews_path, "Input reviews (JSONL/CSV)");
        train_cmd->add_option("--glove", cfg.glove_path, "GloVe text file");
        train_cmd->add_option("--out", cfg.out_dir, "Output directory")
            ->capture_default_str();
        train_cmd->add_option("--arch", arch_name, "rnn|gru|lstm")->capture_default_str();
        train_cmd
            ->add_option("--resampling", resampling_name,
                         "none|oversample|undersample|smote|adasyn")
            ->capture_default_str();
        train_cmd->add_option("--epochs", cfg.train.epochs, "Training epochs")
            ->capture_default_str();
        train_cmd->add_option("--batch-size", cfg.train.batch_size, "Mini-batch size")
            ->capture_default_str();
        train_cmd->add_option("--seed", cfg.train.seed, "Run seed")->capture_default_str();
        train_cmd->add_option("--max-len", cfg.train.max_len, "Padded sequence length")
            ->capture_default_str();
        train_cmd->add_option("--hidden-size", cfg.train.hidden_size, "Hidden state size")
            ->capture_default_str();
        train_cmd->add_option("--lr", cfg.train.adam.lr, "Adam learning rate")
            ->capture_default_str();
        train_cmd->add_option("--min-freq", cfg.min_freq, "Vocabulary frequency floor")
            ->capture_default_str();
        train_cmd
            ->add_option("--embedding-dim", cfg.embedding_dim,
                         "Embedding width (must match the GloVe file when given)")
            ->capture_default_str();
        train_cmd->add_option("--train-ratio", cfg.train_ratio, "Training split share")
            ->capture_default_str();
        train_cmd->add_option("--val-ratio", cfg.val_ratio, "Validation split share")
            ->capture_default_str();
        train_cmd->add_option("--knn-k", cfg.train.knn_k, "Neighbors for smote/adasyn")
            ->capture_default_str();
        train_cmd->add_option("--adasyn-beta", cfg.train.adasyn_beta, "ADASYN balance level")
            ->capture_default_str();
        train_cmd->add_flag("--mask-stop,!--no-mask-stop", cfg.train.mask_stop,
                            "Freeze the recurrence after the last non-pad token");
        train_cmd->add_flag("--fine-tune-embeddings", cfg.train.fine_tune_embeddings,
                            "Backpropagate into the embedding matrix");
        train_cmd->add_flag("--timing", cfg.timing,
                            "Record wall-clock epoch_ms in the curve CSV");
        train_cmd->add_flag("--percent", cfg.percent, "Render reports as whole percents");
        add_preprocess_flags(train_cmd, cfg);

        std::string eval_checkpoint, eval_vocab;
        size_t n_per_class = 0;
        uint64_t eval_seed = 0;
        CLI::App* eval_cmd = app.add_subcommand(
            "eval-balanced", "Evaluate a checkpoint raw and under the balanced-test protocol");
        eval_cmd->add_option("--checkpoint", eval_checkpoint, "Trained checkpoint")
            ->required();
        eval_cmd->add_option("--vocab", eval_vocab, "vocab.tsv saved beside the checkpoint")
            ->required();
        eval_cmd->add_option("--reviews", cfg.reviews_path, "Labeled reviews (JSONL/CSV)");
        eval_cmd->add_option("--n-per-class", n_per_class, "Per-class test size")
            ->required();
        eval_cmd->add_option("--seed", eval_seed, "Resampling seed")->capture_default_str();
        eval_cmd->add_option("--out", cfg.out_dir, "Output directory")
            ->capture_default_str();
        eval_cmd->add_flag("--percent", cfg.percent, "Render reports as whole percents");
        add_preprocess_flags(eval_cmd, cfg);

        std::string gradcheck_arch = "lstm";
        uint64_t gradcheck_seed = 0;
        double gradcheck_eps = 1e-5;
        bool corrupt = false;
        CLI::App* gradcheck =
            app.add_subcommand("gradcheck", "Finite-difference audit of the BPTT gradients");
        gradcheck->add_option("--arch", gradcheck_arch, "rnn|gru|lstm")
            ->capture_default_str();
        gradcheck->add_option("--seed", gradcheck_seed, "Model/batch seed")
            ->capture_default_str();
        gradcheck->add_option("--eps", gradcheck_eps, "Finite-difference step")
            ->capture_default_str();
        gradcheck
            ->add_flag("--corrupt", corrupt,
                       "Deliberately corrupt one gradient group (harness self-test)")
            ->group("");  // hidden debug flag

        std::string rep_checkpoint, rep_vocab;
        std::vector<uint64_t> from_confusion;
        CLI::App* reputation =
            app.add_subcommand("reputation", "Net Brand Reputation per provider");
        reputation->add_option("--checkpoint", rep_checkpoint, "Trained checkpoint");
        reputation->add_option("--vocab", rep_vocab, "vocab.tsv saved beside the checkpoint");
        reputation->add_option("--reviews", cfg.reviews_path, "Reviews to score (JSONL/CSV)");
        reputation->add_option("--out", cfg.out_dir, "Output directory")
            ->capture_default_str();
        reputation
            ->add_option("--from-confusion", from_confusion,
                         "Evaluation mode: compute NBR from TP TN counts")
            ->expected(2);
        add_preprocess_flags(reputation, cfg);

        app.require_subcommand(1);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }

        if (app.got_subcommand(synth)) {
            run_synth(corpus, synth_out, std::cout);
            return 0;
        }
        if (app.got_subcommand(preprocess)) {
            run_preprocess(cfg, preprocess_out, std::cout);
            return 0;
        }
        if (app.got_subcommand(train_cmd)) {
            cfg.train.arch = arch_from_string(arch_name);
            cfg.train.resampling = resampling_from_string(resampling_name);
            run_training(cfg, std::cout);
            return 0;
        }
        if (app.got_subcommand(eval_cmd)) {
            run_eval_balanced(cfg, eval_checkpoint, eval_vocab, n_per_class, eval_seed,
                              std::cout);
            return 0;
        }
        if (app.got_subcommand(gradcheck)) {
            const double err = run_gradcheck(arch_from_string(gradcheck_arch),
                                             gradcheck_seed, gradcheck_eps, corrupt,
                                             std::cout);
            return err < 1e-4 ? 0 : 1;
        }
        if (app.got_subcommand(reputation)) {
            if (!from_confusion.empty()) {
                std::cout << format_nbr(nbr(from_confusion[0], from_confusion[1])) << "\n";
                return 0;
            }
            if (rep_checkpoint.empty() || rep_vocab.empty())
                throw ArgumentError(
                    "reputation needs --checkpoint and --vocab (or --from-confusion TP TN)");
            run_reputation(cfg, rep_checkpoint, rep_vocab, std::cout);
            return 0;
        }
        throw ContractError("no subcommand dispatched");
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const ContractError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace microrep
