// setshape: reproduces the I(x)/I(y) tables and figure series, and applies the
// minimal-information shaping transform to files.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sst/codec.hpp"
#include "sst/errors.hpp"
#include "sst/exact_analyzer.hpp"
#include "sst/monte_carlo.hpp"
#include "sst/numeric.hpp"
#include "sst/shaping_map.hpp"

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kInvalidArguments = 2, kDomain = 3, kResource = 4 };

enum class Format { csv, json };

struct RunConfig {
    std::size_t alphabet = 0;
    std::uint64_t length = 0;
    std::uint64_t order = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
    std::string method = "auto";
    Format format = Format::csv;
    sst::Interpretation interpretation = sst::Interpretation::empirical;
    std::string output;
    std::string input;
    std::string value;
    bool text = false;
};

std::string full(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string method_name(sst::Method m) { return m == sst::Method::exact ? "exact" : "monte-carlo"; }

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_reports(const std::vector<sst::AverageReport>& reports, const RunConfig& cfg) {
    Output out(cfg.output);
    auto& os = out.stream();
    if (cfg.format == Format::json) {
        json rows = json::array();
        for (const auto& r : reports) {
            json row = {{"alphabet_size", r.alphabet_size}, {"n", r.n},
                        {"k", r.k},
                        {"method", method_name(r.method)},
                        {"i_x_bits", r.i_x_bits},
                        {"i_y_bits", r.i_y_bits},
                        {"diff_bits", r.diff_bits}};
            if (r.i_x_std_error) row["i_x_std_error"] = *r.i_x_std_error;
            if (r.i_y_std_error) row["i_y_std_error"] = *r.i_y_std_error;
            rows.push_back(row);
        }
        os << rows.dump(2) << '\n';
        return;
    }
    os << "alphabet_size,n,k,method,i_x_bits,i_y_bits,diff_bits,i_x_std_error,i_y_std_error\n";
    for (const auto& r : reports) {
        os << r.alphabet_size << ',' << r.n << ',' << r.k << ',' << method_name(r.method) << ','
           << fixed3(r.i_x_bits) << ',' << fixed3(r.i_y_bits) << ',' << fixed3(r.diff_bits) << ','
           << (r.i_x_std_error ? fixed6(*r.i_x_std_error) : "") << ','
           << (r.i_y_std_error ? fixed6(*r.i_y_std_error) : "") << '\n';
    }
}

int cmd_table1(const RunConfig& cfg) {
    std::vector<sst::AverageReport> reports;
    for (std::size_t a = 2; a <= 7; ++a) reports.push_back(sst::exact_report(a, a, 1, cfg.interpretation));
    write_reports(reports, cfg);
    return kOk;
}

int cmd_table2(const RunConfig& cfg) {
    sst::TableMethod method = sst::TableMethod::automatic;
    if (cfg.method == "exact") method = sst::TableMethod::exact;
    else if (cfg.method == "mc") method = sst::TableMethod::monte_carlo;
    auto configs = sst::table2_configs(method, cfg.samples, cfg.seed, cfg.threads);
    if (cfg.alphabet != 0) {
        std::erase_if(configs, [&](const auto& c) { return c.mc.alphabet_size != cfg.alphabet; });
        if (configs.empty()) {
            sst::TableRowConfig row = sst::table2_configs(method, cfg.samples, cfg.seed, cfg.threads).front();
            row.mc.alphabet_size = cfg.alphabet;
            configs.push_back(row);
        }
    }
    for (auto& c : configs) {
        if (cfg.length != 0) c.mc.length = cfg.length;
        c.mc.order = cfg.order;
        c.mc.interpretation = cfg.interpretation;
    }
    write_reports(sst::table2(configs), cfg);
    return kOk;
}

int cmd_figure1(const RunConfig& cfg) {
    const auto series = sst::figure1_series(cfg.alphabet, cfg.length, cfg.order);
    sst::CompensatedSum sx, sy;
    for (const auto& row : series) {
        sx.add(row.i_x);
        sy.add(row.i_y);
    }
    const double mean_x = sx.value() / static_cast<double>(series.size());
    const double mean_y = sy.value() / static_cast<double>(series.size());
    Output out(cfg.output);
    auto& os = out.stream();
    if (cfg.format == Format::json) {
        json rows = json::array();
        for (const auto& r : series) rows.push_back({r.rank, r.i_x, r.i_y});
        json doc = {{"alphabet_size", cfg.alphabet}, {"n", cfg.length}, {"k", cfg.order},
                    {"mean_i_x_bits", mean_x},     {"mean_i_y_bits", mean_y},
                    {"columns", {"rank", "i_x_bits", "i_y_bits"}},
                    {"rows", rows}};
        os << doc.dump() << '\n';
    } else {
        std::string buf = "rank,i_x_bits,i_y_bits\n";
        for (const auto& r : series) {
            buf += std::to_string(r.rank);
            buf += ',';
            buf += full(r.i_x);
            buf += ',';
            buf += full(r.i_y);
            buf += '\n';
        }
        os << buf;
    }
    std::cerr << "rows=" << series.size() << " mean_i_x_bits=" << fixed3(mean_x) << " mean_i_y_bits=" << fixed3(mean_y)
              << '\n';
    return kOk;
}

struct SymbolFile {
    std::vector<sst::Symbol> symbols;
    bool trailing_newline = false;
};

SymbolFile read_symbols(const RunConfig& cfg) {
    auto bytes = read_file(cfg.input);
    SymbolFile f;
    if (cfg.text) {
        if (!bytes.empty() && bytes.back() == '\n') {
            f.trailing_newline = true;
            bytes.pop_back();
            if (!bytes.empty() && bytes.back() == '\r') bytes.pop_back();
        }
    }
    f.symbols.reserve(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        unsigned v = bytes[i];
        if (cfg.text) {
            if (v < '0' || v > '9') throw sst::DomainError("invalid symbol byte at offset " + std::to_string(i));
            v -= '0';
        }
        if (v >= cfg.alphabet)
            throw sst::DomainError("invalid symbol " + std::to_string(v) + " at offset " + std::to_string(i));
        f.symbols.push_back(v);
    }
    return f;
}

void write_symbols(const RunConfig& cfg, const std::vector<sst::Symbol>& symbols, bool trailing_newline) {
    std::string buf;
    buf.reserve(symbols.size() + 1);
    for (sst::Symbol s : symbols) buf.push_back(static_cast<char>(cfg.text ? '0' + s : s));
    if (cfg.text && trailing_newline) buf.push_back('\n');
    Output out(cfg.output);
    out.stream().write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

int cmd_transform(const RunConfig& cfg, bool forward) {
    const sst::ShapingParameters params{cfg.alphabet, cfg.length, cfg.order};
    params.validate();
    const SymbolFile in = read_symbols(cfg);
    const std::uint64_t block = forward ? params.length : params.shaped_length();
    if (in.symbols.size() % block != 0)
        throw sst::DomainError("input holds " + std::to_string(in.symbols.size()) +
                               " symbols, not a multiple of the block length " + std::to_string(block));
    std::vector<sst::Symbol> out;
    for (std::size_t at = 0; at < in.symbols.size(); at += block) {
        const sst::SymbolString piece({in.symbols.begin() + static_cast<std::ptrdiff_t>(at),
                                       in.symbols.begin() + static_cast<std::ptrdiff_t>(at + block)},
                                      cfg.alphabet);
        const sst::SymbolString mapped = forward ? sst::shape(piece, params) : sst::unshape(piece, params);
        out.insert(out.end(), mapped.symbols().begin(), mapped.symbols().end());
    }
    write_symbols(cfg, out, in.trailing_newline);
    return kOk;
}

sst::SymbolString parse_string(const std::string& text, std::size_t a) {
    if (text.find(',') == std::string::npos) return sst::SymbolString::from_digits(text, a);
    std::vector<sst::Symbol> symbols;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) symbols.push_back(static_cast<sst::Symbol>(std::stoul(item)));
    return sst::SymbolString(std::move(symbols), a);
}

int cmd_rank(const RunConfig& cfg) {
    const auto s = parse_string(cfg.value, cfg.alphabet);
    Output out(cfg.output);
    out.stream() << sst::to_string(sst::rank(s)) << '\n';
    return kOk;
}

int cmd_unrank(const RunConfig& cfg) {
    sst::BigInt r;
    if (r.set_str(cfg.value, 10) != 0) throw std::invalid_argument("rank must be a decimal integer");
    Output out(cfg.output);
    out.stream() << sst::unrank(r, cfg.length, cfg.alphabet).to_text() << '\n';
    return kOk;
}

int cmd_encode(const RunConfig& cfg) {
    const SymbolFile in = read_symbols(cfg);
    const sst::SymbolString s(in.symbols, cfg.alphabet);
    const auto bytes = sst::write_container(sst::encode(s), s.size(), cfg.alphabet);
    Output out(cfg.output);
    out.stream().write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    return kOk;
}

int cmd_decode(const RunConfig& cfg) {
    const auto bytes = read_file(cfg.input);
    const sst::Container c = sst::read_container(bytes);
    RunConfig out_cfg = cfg;
    out_cfg.alphabet = c.alphabet_size;
    const auto s = sst::decode(c.payload, c.length, c.alphabet_size);
    if (cfg.text && c.alphabet_size > 10) throw std::invalid_argument("text output needs an alphabet of at most 10");
    write_symbols(out_cfg, {s.symbols().begin(), s.symbols().end()}, false);
    return kOk;
}

int cmd_codec_experiment(const RunConfig& cfg) {
    const sst::ShapingParameters params{cfg.alphabet, cfg.length, cfg.order};
    const auto r = sst::shaping_experiment(params, cfg.samples, cfg.seed, cfg.threads);
    Output out(cfg.output);
    auto& os = out.stream();
    if (cfg.format == Format::json) {
        json doc = {{"alphabet_size", r.params.alphabet_size},
                    {"n", r.params.length},
                    {"k", r.params.order},
                    {"samples", r.samples},
                    {"seed", r.seed},
                    {"generator", sst::kGeneratorName},
                    {"mean_bits_raw", r.mean_bits_raw},
                    {"mean_bits_shaped", r.mean_bits_shaped},
                    {"mean_emp_info_raw", r.mean_emp_info_raw},
                    {"mean_emp_info_shaped", r.mean_emp_info_shaped},
                    {"delta_bits", r.delta_bits},
                    {"bits_per_symbol_raw", r.bits_per_symbol_raw},
                    {"bits_per_symbol_shaped", r.bits_per_symbol_shaped},
                    {"std_error_emp_info_raw", r.std_error_emp_info_raw},
                    {"std_error_emp_info_shaped", r.std_error_emp_info_shaped}};
        os << doc.dump(2) << '\n';
        return kOk;
    }
    os << "alphabet_size,n,k,samples,seed,mean_bits_raw,mean_bits_shaped,mean_emp_info_raw,mean_emp_info_shaped,"
          "delta_bits,bits_per_symbol_raw,bits_per_symbol_shaped,std_error_emp_info_raw,std_error_emp_info_shaped\n";
    os << r.params.alphabet_size << ',' << r.params.length << ',' << r.params.order << ',' << r.samples << ',' << r.seed
       << ',' << full(r.mean_bits_raw) << ',' << full(r.mean_bits_shaped) << ',' << full(r.mean_emp_info_raw) << ','
       << full(r.mean_emp_info_shaped) << ',' << full(r.delta_bits) << ',' << full(r.bits_per_symbol_raw) << ','
       << full(r.bits_per_symbol_shaped) << ',' << full(r.std_error_emp_info_raw) << ','
       << full(r.std_error_emp_info_shaped) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal-information shaping transform and its average-information reports"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
    const std::map<std::string, sst::Interpretation> interpretations{
        {"empirical", sst::Interpretation::empirical}, {"literal", sst::Interpretation::literal}};

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats))
            ->option_text("csv|json");
        cmd->add_option("--output,-o", cfg.output, "Output path (default: standard output)");
    };
    auto add_interpretation = [&](CLI::App* cmd) {
        cmd->add_option("--interpretation", cfg.interpretation, "Information content measure")
            ->transform(CLI::CheckedTransformer(interpretations))
            ->option_text("empirical|literal");
    };
    auto add_sampling = [&](CLI::App* cmd) {
        cmd->add_option("--samples,-M", cfg.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "Random seed");
        cmd->add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)")
            ->check(CLI::Range(1U, 1024U));
    };
    auto add_shape_params = [&](CLI::App* cmd) {
        cmd->add_option("--alphabet,-a", cfg.alphabet, "Alphabet size")->check(CLI::Range(2, 256));
        cmd->add_option("--length,-n", cfg.length, "Source string length")->check(CLI::PositiveNumber);
        cmd->add_option("--order-k", cfg.order, "Shaping order k")->check(CLI::PositiveNumber);
    };

    auto* table1 = app.add_subcommand("table1", "I(x), I(y) for |A| = 2..7, n = |A|, k = 1 (exact)");
    add_format(table1);
    add_interpretation(table1);

    auto* table2 = app.add_subcommand("table2", "I(x), I(y) for |A| = 2..10, n = 100, k = 1");
    table2->add_option("--method", cfg.method, "exact, mc or auto")->check(CLI::IsMember({"exact", "mc", "auto"}));
    table2->add_option("--alphabet,-a", cfg.alphabet, "Only this alphabet size")->check(CLI::Range(1, 256));
    table2->add_option("--length,-n", cfg.length, "Source string length (default 100)")->check(CLI::PositiveNumber);
    table2->add_option("--order-k", cfg.order, "Shaping order k")->check(CLI::PositiveNumber);
    add_sampling(table2);
    add_format(table2);
    add_interpretation(table2);

    auto* figure1 = app.add_subcommand("figure1", "Per-rank I(x_i), I(y_i) series (default |A| = 3, n = 10)");
    add_shape_params(figure1);
    add_format(figure1);

    auto* shape = app.add_subcommand("shape", "Shape a file block by block");
    auto* unshape = app.add_subcommand("unshape", "Invert shape");
    for (auto* cmd : {shape, unshape}) {
        cmd->add_option("input", cfg.input, "Input file")->required();
        cmd->add_flag("--text", cfg.text, "Symbols are ASCII digits instead of raw bytes");
        cmd->add_option("--output,-o", cfg.output, "Output path (default: standard output)");
        add_shape_params(cmd);
        cmd->get_option("--length")->required();
    }

    auto* rank = app.add_subcommand("rank", "Rank of a string in the information order");
    rank->add_option("string", cfg.value, "Digits, or comma-separated symbol indices")->required();
    rank->add_option("--alphabet,-a", cfg.alphabet, "Alphabet size")->required()->check(CLI::Range(1, 65535));
    rank->add_option("--output,-o", cfg.output, "Output path");

    auto* unrank = app.add_subcommand("unrank", "String at a given rank");
    unrank->add_option("rank", cfg.value, "Decimal rank")->required();
    unrank->add_option("--alphabet,-a", cfg.alphabet, "Alphabet size")->required()->check(CLI::Range(1, 65535));
    unrank->add_option("--length,-n", cfg.length, "String length")->required()->check(CLI::PositiveNumber);
    unrank->add_option("--output,-o", cfg.output, "Output path");

    auto* encode = app.add_subcommand("encode", "Arithmetic-code a symbol file into a container");
    encode->add_option("input", cfg.input, "Input file")->required();
    encode->add_option("--alphabet,-a", cfg.alphabet, "Alphabet size")->required()->check(CLI::Range(1, 256));
    encode->add_flag("--text", cfg.text, "Symbols are ASCII digits instead of raw bytes");
    encode->add_option("--output,-o", cfg.output, "Output path");

    auto* decode = app.add_subcommand("decode", "Decode a container back into symbols");
    decode->add_option("input", cfg.input, "Container file")->required();
    decode->add_flag("--text", cfg.text, "Write ASCII digits instead of raw bytes");
    decode->add_option("--output,-o", cfg.output, "Output path");

    auto* experiment = app.add_subcommand("codec-experiment",
                                          "Compressed size of strings before and after shaping (default |A| = 3, n = 10, M = 10^4)");
    add_shape_params(experiment);
    add_sampling(experiment);
    add_format(experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidArguments;
    }

    // Per-command defaults for options left unset.
    auto given = [](CLI::App* cmd, const char* name) { return cmd->count(name) > 0; };
    if (figure1->parsed() || experiment->parsed()) {
        auto* cmd = figure1->parsed() ? figure1 : experiment;
        if (!given(cmd, "--alphabet")) cfg.alphabet = 3;
        if (!given(cmd, "--length")) cfg.length = 10;
        if (experiment->parsed() && !given(experiment, "--samples")) cfg.samples = 10'000;
    }
    if ((shape->parsed() || unshape->parsed()) && cfg.alphabet == 0) cfg.alphabet = 2;

    try {
        if (cfg.text && cfg.alphabet > 10 && !decode->parsed())
            throw std::invalid_argument("--text needs an alphabet of at most 10");
        if (table1->parsed()) return cmd_table1(cfg);
        if (table2->parsed()) return cmd_table2(cfg);
        if (figure1->parsed()) return cmd_figure1(cfg);
        if (shape->parsed()) return cmd_transform(cfg, true);
        if (unshape->parsed()) return cmd_transform(cfg, false);
        if (rank->parsed()) return cmd_rank(cfg);
        if (unrank->parsed()) return cmd_unrank(cfg);
        if (encode->parsed()) return cmd_encode(cfg);
        if (decode->parsed()) return cmd_decode(cfg);
        if (experiment->parsed()) return cmd_codec_experiment(cfg);
    } catch (const sst::ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const sst::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const sst::CorruptStreamError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }
    return kInvalidArguments;
}
