#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "expreg/error.hpp"
#include "expreg/model_io.hpp"
#include "expreg/structure.hpp"

using namespace expreg;

namespace {

struct CapFlags {
    std::uint64_t max_nodes = 0;
    std::uint64_t max_steps = 0;
    std::uint64_t max_colourings = 0;

    Caps caps() const {
        Caps c = Caps::defaults();
        if (max_nodes) c.max_nodes = max_nodes;
        if (max_steps) c.max_steps = max_steps;
        if (max_colourings) c.max_colourings = max_colourings;
        return c;
    }
};

bool is_automaton(const Model& m) {
    const std::string k = model_kind(m);
    return k == "ariadne-automaton" || k == "althennie";
}

Model load(const std::string& path) { return model_from_json(read_json_file(path)); }

Tiling tiling_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("tiles") || !j["tiles"].is_array()) throw UsageError("tiling file needs \"tiles\"");
    Tiling t;
    for (const Json& tile : j["tiles"]) {
        if (!tile.is_array()) throw UsageError("each tile is an array of steps");
        Tile out;
        for (const Json& s : tile) {
            if (!s.is_string()) throw UsageError("steps are strings");
            out.push_back(parse_step(s.get<std::string>()));
        }
        t.push_back(std::move(out));
    }
    return t;
}

Json tiling_to_json(const Tiling& t) {
    Json tiles = Json::array();
    for (const Tile& tile : t) {
        Json out = Json::array();
        for (const Step& s : tile) out.push_back(to_string(s));
        tiles.push_back(std::move(out));
    }
    return {{"tiles", std::move(tiles)}};
}

std::vector<LabelledSplit> parse_splits(const std::string& text) {
    std::istringstream in(text);
    std::vector<LabelledSplit> out;
    for (std::string tok; in >> tok;) {
        LabelledSplit ls;
        const auto colon = tok.find(':');
        ls.split = parse_split(tok.substr(0, colon));
        if (colon != std::string::npos) ls.label = static_cast<unsigned>(std::stoul(tok.substr(colon + 1)));
        out.push_back(ls);
    }
    return out;
}

std::string splits_line(const std::vector<LabelledSplit>& seq) {
    std::string out;
    for (const auto& ls : seq) {
        if (!out.empty()) out += ' ';
        out += to_string(ls.split);
        if (ls.label) out += ":" + std::to_string(*ls.label);
    }
    return out;
}

int run_main(int argc, char** argv) {
    CLI::App app{"Bounded-visit transducer toolkit"};
    app.require_subcommand(1);
    CapFlags flags;
    app.add_option("--max-nodes", flags.max_nodes, "Node cap");
    app.add_option("--max-steps", flags.max_steps, "Step cap");
    app.add_option("--max-colourings", flags.max_colourings, "Colouring cap");

    std::string model, input;
    auto* run = app.add_subcommand("run", "Evaluate a model on one word");
    run->add_option("--model", model, "Model file")->required();
    run->add_option("--input", input, "Input word (or JSON array of symbols)")->required();

    std::string from, to, out;
    auto* translate = app.add_subcommand("translate", "Write the translated model");
    translate->add_option("--from", from)->required()->check(CLI::IsMember({"yh", "ariadne"}));
    translate->add_option("--to", to)->required()->check(CLI::IsMember({"ariadne", "althennie", "setinterp"}));
    translate->add_option("--model", model)->required();
    translate->add_option("--out", out)->required();

    std::string left, right, alphabet;
    std::size_t maxlen = 6;
    auto* diff = app.add_subcommand("difftest", "Compare two models on all short words");
    diff->add_option("--left", left)->required();
    diff->add_option("--right", right)->required();
    diff->add_option("--alphabet", alphabet, "Letters, or JSON array")->required();
    diff->add_option("--maxlen", maxlen);

    auto* lang = app.add_subcommand("lang", "Accepted words up to a length");
    lang->add_option("--model", model)->required();
    lang->add_option("--maxlen", maxlen);
    lang->add_option("--alphabet", alphabet, "Defaults to the model's input alphabet");

    std::string table, checker = "gap";
    auto* simp = app.add_subcommand("simplicity", "Maximum simplicity over intervals and splits");
    simp->add_option("--model", model)->required();
    simp->add_option("--input", input)->required();
    simp->add_option("--table", table, "CSV output file");
    simp->add_option("--checker", checker)->check(CLI::IsMember({"gap", "literal", "both"}));

    std::string tiling_file, splits;
    std::size_t length = 0, max_per_position = 0;
    bool length_given = false;
    auto* tiling = app.add_subcommand("tiling", "Tilings and split sequences");
    tiling->require_subcommand(1);
    auto* decode = tiling->add_subcommand("decode", "Print the split sequence of a tiling");
    decode->add_option("--file", tiling_file)->required();
    auto* validate = tiling->add_subcommand("validate", "Check a tiling");
    validate->add_option("--file", tiling_file)->required();
    auto* encode = tiling->add_subcommand("encode", "Tiling of a split sequence");
    encode->add_option("--splits", splits, "e.g. \"→0 ←1 ←1\"")->required();
    auto* length_opt = encode->add_option("--length", length, "|w|; defaults to the smallest that fits");
    encode->add_option("--max-per-position", max_per_position);

    std::string dir = ".";
    auto* examples = app.add_subcommand("examples", "Write fixture model files");
    examples->add_option("--out", dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    length_given = length_opt->count() > 0;
    const Caps caps = flags.caps();

    if (*run) {
        const Model m = load(model);
        const std::string r = model_result(m, parse_word_arg(input), caps);
        if (is_automaton(m)) std::cout << (r == "accept" ? "ACCEPT" : "REJECT") << '\n';
        else std::cout << r << '\n';
        return 0;
    }
    if (*translate) {
        const Json src = read_json_file(model);
        const std::string kind = document_kind(src);
        const bool ok = from == "yh" ? kind == "yhennie" : (kind == "ariadne" || kind == "ariadne-automaton");
        if (!ok) throw UsageError("--from " + from + " does not match a " + kind + " model");
        const Json doc = translated_document(src, to);
        model_from_json(doc);
        write_json_file(out, doc);
        return 0;
    }
    if (*diff) {
        const auto report = difftest(load(left), load(right), Alphabet(parse_word_arg(alphabet)), maxlen, caps);
        if (report.ok) {
            std::cout << "OK\n";
            return 0;
        }
        std::cout << "DIFF " << to_string(report.counterexample) << ": " << report.left << " != " << report.right
                  << '\n';
        std::cerr << "Mismatch\n";
        return 1;
    }
    if (*lang) {
        const Model m = load(model);
        if (!is_automaton(m)) throw UsageError("lang needs an automaton model");
        const Alphabet sigma = alphabet.empty() ? model_input(m) : Alphabet(parse_word_arg(alphabet));
        for (const Word& w : words_upto(sigma, maxlen))
            if (model_result(m, w, caps) == "accept") std::cout << to_string(w) << '\n';
        return 0;
    }
    if (*simp) {
        const Model m = load(model);
        const auto* phi = std::get_if<SetInterpretation>(&m);
        if (!phi) throw UsageError("simplicity needs a setinterp model");
        const Checker c = checker == "literal" ? Checker::Literal : checker == "both" ? Checker::Both : Checker::Gap;
        const auto t = simplicity_table(*phi, parse_word_arg(input), !table.empty(), c, caps);
        std::cout << t.max << '\n';
        if (!table.empty()) {
            std::ofstream csv(table);
            if (!csv) throw UsageError("cannot write " + table);
            csv << "lo,hi,split,simplicity\n";
            for (const auto& cell : t.cells)
                csv << cell.interval.lo << ',' << cell.interval.hi << ',' << to_string(cell.split) << ','
                    << cell.simplicity << '\n';
        }
        return 0;
    }
    if (*decode) {
        std::cout << splits_line(tiling_to_labelled_splits(tiling_from_json(read_json_file(tiling_file)))) << '\n';
        return 0;
    }
    if (*validate) {
        const auto check = tiling_validate(tiling_from_json(read_json_file(tiling_file)));
        if (check.valid) {
            std::cout << "VALID live=" << *check.live_position << '\n';
            return 0;
        }
        std::cout << "INVALID " << check.reason << '\n';
        std::cerr << "InvalidTiling\n";
        return 1;
    }
    if (*encode) {
        const auto seq = parse_splits(splits);
        if (!length_given) {
            length = 0;
            for (const auto& ls : seq) {
                const std::size_t need = ls.split.dir == Dir::Right ? ls.split.pos : ls.split.pos - (ls.split.pos > 0);
                length = std::max(length, need);
            }
        }
        std::cout << tiling_to_json(splits_to_tiling(seq, length, max_per_position)).dump() << '\n';
        return 0;
    }
    if (*examples) {
        std::filesystem::create_directories(dir);
        for (const auto& [file, doc] : fixture_documents()) write_json_file(dir + "/" + file, doc);
        write_json_file(dir + "/tiling-sample.json", tiling_to_json(sample_tiling()));
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "UsageError: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "Internal: " << e.what() << '\n';
        return 1;
    }
}
