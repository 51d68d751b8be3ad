#include "profdet/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "profdet/error.hpp"
#include "profdet/harness.hpp"
#include "profdet/io.hpp"
#include "profdet/labeling.hpp"
#include "profdet/profile_det.hpp"
#include "profdet/run_dag.hpp"
#include "profdet/safra.hpp"

namespace profdet {
namespace {

/// Input/output failures that should end the command with a usage exit code.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot write '" + path + "'");
    file << text;
}

bool is_drw_document(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tok(line);
        std::string word;
        if (tok >> word) return word == "drw";
    }
    return false;
}

struct DeterminizeArgs {
    std::string method = "profile";
    std::string in, out;
    std::string format = "native";
    std::size_t max_states = 1'000'000;
};

struct MemberArgs {
    std::string in, word;
    std::string via = "nbw";
};

struct TraceArgs {
    std::string in, word;
    std::size_t levels = 0;
    bool labels = false;
};

struct GenArgs {
    GenSpec spec;
    std::string out;
};

struct CheckArgs {
    CheckConfig cfg;
    std::string json;
};

int do_determinize(const DeterminizeArgs& args, std::ostream& out) {
    Nbw a = normalize(parse_nbw(read_file(args.in)));
    DeterminizeOptions opts;
    opts.max_states = args.max_states;
    Drw d = args.method == "safra" ? determinize_safra(a, opts) : determinize_profile(a, opts);
    emit(args.out, args.format == "hoa" ? format_hoa(d) : format_drw(d), out);
    return kExitOk;
}

int do_member(const MemberArgs& args, std::ostream& out) {
    std::string text = read_file(args.in);
    bool accepted = false;
    if (is_drw_document(text)) {
        Drw d = parse_drw(text);
        accepted = drw_run_eval(d, parse_lasso(args.word, d.alphabet));
    } else {
        Nbw a = normalize(parse_nbw(text));
        Lasso w = parse_lasso(args.word, a.alphabet());
        if (args.via == "profile") accepted = drw_run_eval(determinize_profile(a), w);
        else if (args.via == "safra") accepted = drw_run_eval(determinize_safra(a), w);
        else accepted = nbw_member(a, w);
    }
    out << (accepted ? "accept" : "reject") << "\n";
    return kExitOk;
}

int do_trace(const TraceArgs& args, std::ostream& out) {
    Nbw a = normalize(parse_nbw(read_file(args.in)));
    Lasso w = parse_lasso(args.word, a.alphabet());
    std::size_t levels = args.levels ? args.levels : w.prefix.size() + w.period.size() + 1;
    Word prefix;
    for (std::size_t i = 0; i + 1 < levels; ++i) prefix.push_back(lasso_at(w, i));

    auto tree_levels = profile_tree(a, prefix);
    std::vector<std::string> lines;
    if (args.labels) lines = labeled_trace_lines(a, label_levels(tree_levels, a.num_states()));
    else lines = trace_lines(a, tree_levels);

    Macrostate m = initial_macrostate(a);
    std::size_t line = 0;
    for (std::size_t i = 0; i < tree_levels.size(); ++i) {
        if (i > 0) m = sigma_successor(a, m, prefix[i - 1]);
        for (std::size_t k = 0; k < tree_levels[i].width(); ++k) out << lines[line++] << "\n";
        out << "level=" << i << " macrostate=" << format_macrostate(a, m) << "\n";
    }
    return kExitOk;
}

int do_gen(const GenArgs& args, std::ostream& out) {
    emit(args.out, format_nbw(gen_nbw(args.spec)), out);
    return kExitOk;
}

int do_check(const CheckArgs& args, std::ostream& out) {
    CheckReport report = cross_check(args.cfg);
    out << "automata=" << report.automata << " lassos=" << report.lassos << " words=" << report.words
        << " macrostates=" << report.macrostates_checked << " safra_trees=" << report.safra_trees_checked << "\n";
    out << "max_profile_states=" << report.max_profile_states << " max_safra_states=" << report.max_safra_states
        << " good_bad_overlaps=" << report.good_bad_overlaps << "\n";
    out << "bounds: |u|<=" << report.max_u << " |v|<=" << report.max_v << " prefix_depth=" << report.prefix_depth << "\n";
    out << "disagreements=" << report.disagreements.size() << " violations=" << report.violations.size()
        << " resource_failures=" << report.resource_failures << "\n";
    for (std::size_t i = 0; i < report.disagreements.size() && i < 5; ++i) {
        const auto& d = report.disagreements[i];
        out << "  disagreement seed=" << d.seed << " lasso=" << d.lasso << " nbw=" << d.verdicts.nbw
            << " profile=" << d.verdicts.profile << " safra=" << d.verdicts.safra << "\n";
    }
    for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i)
        out << "  violation seed=" << report.violations[i].seed << " " << report.violations[i].message << "\n";
    if (!args.json.empty()) emit(args.json, report.to_json(), out);
    out << (report.pass() ? "PASS" : "FAIL") << "\n";
    return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Büchi determinization via profile trees and Safra trees", "profdet"};
    app.require_subcommand(0, 1);
    bool version = false;
    app.add_flag("--version", version, "Print the version and exit");

    DeterminizeArgs det;
    auto* det_cmd = app.add_subcommand("determinize", "Determinize an NBW into a DRW");
    det_cmd->add_option("--method", det.method, "Construction")->check(CLI::IsMember({"profile", "safra"}));
    det_cmd->add_option("--in", det.in, "Input NBW")->required();
    det_cmd->add_option("--out", det.out, "Output file (default: stdout)");
    det_cmd->add_option("--format", det.format, "Output format")->check(CLI::IsMember({"native", "hoa"}));
    det_cmd->add_option("--max-states", det.max_states, "State budget")->check(CLI::PositiveNumber);

    MemberArgs mem;
    auto* mem_cmd = app.add_subcommand("member", "Decide membership of a lasso u;v");
    mem_cmd->add_option("--in", mem.in, "Input NBW or DRW")->required();
    mem_cmd->add_option("--word", mem.word, "Lasso, e.g. \"a;b\"")->required();
    mem_cmd->add_option("--via", mem.via, "Decision procedure for NBW input")
        ->check(CLI::IsMember({"nbw", "profile", "safra"}));

    TraceArgs tr;
    auto* tr_cmd = app.add_subcommand("trace", "Print profile-tree levels and macrostates along a lasso");
    tr_cmd->add_option("--in", tr.in, "Input NBW")->required();
    tr_cmd->add_option("--word", tr.word, "Lasso, e.g. \"a;b\"")->required();
    tr_cmd->add_option("--levels", tr.levels, "Number of levels (default |u|+|v|+1)");
    tr_cmd->add_flag("--labels", tr.labels, "Include labeling information");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random NBW");
    gen_cmd->add_option("--states", gen.spec.num_states)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--alphabet", gen.spec.alphabet_size)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--density", gen.spec.density)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--acc", gen.spec.accepting_fraction)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--seed", gen.spec.seed);
    gen_cmd->add_option("--out", gen.out, "Output file (default: stdout)");

    CheckArgs chk;
    chk.cfg.gen.num_states = 5;
    auto* chk_cmd = app.add_subcommand("check", "Cross-validate NBW, profile DRW and Safra DRW on random automata");
    chk_cmd->add_option("--states", chk.cfg.gen.num_states, "Largest automaton size")->check(CLI::PositiveNumber);
    chk_cmd->add_option("--min-states", chk.cfg.min_states, "Smallest automaton size")->check(CLI::PositiveNumber);
    chk_cmd->add_option("--alphabet", chk.cfg.gen.alphabet_size)->check(CLI::PositiveNumber);
    chk_cmd->add_option("--density", chk.cfg.gen.density)->check(CLI::Range(0.0, 1.0));
    chk_cmd->add_option("--acc", chk.cfg.gen.accepting_fraction)->check(CLI::Range(0.0, 1.0));
    chk_cmd->add_option("--seed", chk.cfg.gen.seed);
    chk_cmd->add_option("--count", chk.cfg.count);
    chk_cmd->add_option("--max-u", chk.cfg.max_u);
    chk_cmd->add_option("--max-v", chk.cfg.max_v)->check(CLI::PositiveNumber);
    chk_cmd->add_option("--depth", chk.cfg.prefix_depth, "Prefix length for invariant sweeps");
    chk_cmd->add_option("--max-states", chk.cfg.max_states, "State budget per construction")->check(CLI::PositiveNumber);
    chk_cmd->add_flag("--mutate", chk.cfg.mutate_profile, "Negative control: corrupt the profile DRW");
    chk_cmd->add_option("--json", chk.json, "Write a JSON report");

    std::vector<std::string> argv_store{"profdet"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (version) {
            out << "profdet " << kVersion << "\n";
            return kExitOk;
        }
        if (det_cmd->parsed()) return do_determinize(det, out);
        if (mem_cmd->parsed()) return do_member(mem, out);
        if (tr_cmd->parsed()) return do_trace(tr, out);
        if (gen_cmd->parsed()) return do_gen(gen, out);
        if (chk_cmd->parsed()) return do_check(chk, out);
        err << app.help();
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SymbolError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace profdet
