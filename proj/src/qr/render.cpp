#include <cctype>
#include <charconv>

#include "relicpress/error.hpp"
#include "relicpress/qr.hpp"

namespace relicpress::qr {

namespace {

[[noreturn]] void bad_image(const std::string& why) { throw Error(ErrorKind::InvalidInput, why); }

void check_geometry(const QrSymbolSpec& spec) {
    if (spec.module_px < 1) bad_image("module_px must be positive");
    if (spec.quiet_zone < 0) bad_image("quiet_zone must be non-negative");
}

std::string render_svg(const QrMatrix& m, int px, int quiet) {
    const int side = (m.size() + 2 * quiet) * px;
    const std::string w = std::to_string(side);
    const std::string p = std::to_string(px);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                      w + "\" height=\"" + w + "\" viewBox=\"0 0 " + w + " " + w +
                      "\" shape-rendering=\"crispEdges\">\n"
                      "<rect width=\"" + w + "\" height=\"" + w + "\" fill=\"#FFFFFF\"/>\n"
                      "<path fill=\"#000000\" d=\"";
    bool first = true;
    for (int y = 0; y < m.size(); ++y)
        for (int x = 0; x < m.size(); ++x) {
            if (!m.dark(x, y)) continue;
            if (!first) out += ' ';
            first = false;
            out += "M" + std::to_string((x + quiet) * px) + "," + std::to_string((y + quiet) * px) + "h" + p + "v" +
                   p + "h-" + p + "z";
        }
    out += "\"/>\n</svg>\n";
    return out;
}

std::string render_pgm(const QrMatrix& m, int px, int quiet) {
    const int side = (m.size() + 2 * quiet) * px;
    std::string out = "P5\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
    const std::size_t header = out.size();
    out.resize(header + static_cast<std::size_t>(side) * side, static_cast<char>(255));
    for (int y = 0; y < m.size(); ++y)
        for (int x = 0; x < m.size(); ++x) {
            if (!m.dark(x, y)) continue;
            for (int dy = 0; dy < px; ++dy) {
                const std::size_t row = header + static_cast<std::size_t>((y + quiet) * px + dy) * side;
                for (int dx = 0; dx < px; ++dx) out[row + static_cast<std::size_t>((x + quiet) * px + dx)] = 0;
            }
        }
    return out;
}

class PgmHeader {
public:
    explicit PgmHeader(std::string_view s) : s_(s) {}

    int number() {
        skip();
        int v = 0;
        const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{} || v < 0) bad_image("malformed PGM header");
        pos_ = static_cast<std::size_t>(end - s_.data());
        return v;
    }

    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }

private:
    void skip() {
        while (pos_ < s_.size()) {
            if (s_[pos_] == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 2;
};

int symbol_side_for(int pixels, int px, int quiet) {
    if (pixels % px != 0) bad_image("image side " + std::to_string(pixels) + " is not a multiple of module_px");
    const int size = pixels / px - 2 * quiet;
    if (size < 21 || size > 177 || (size - 17) % 4 != 0)
        bad_image("image side " + std::to_string(pixels) + " does not match a QR symbol with this geometry");
    return size;
}

}  // namespace

std::string render(const QrMatrix& m, const QrSymbolSpec& spec, ImageFormat format) {
    check_geometry(spec);
    return format == ImageFormat::Svg ? render_svg(m, spec.module_px, spec.quiet_zone)
                                      : render_pgm(m, spec.module_px, spec.quiet_zone);
}

QrMatrix read_pgm(std::string_view pgm, int module_px, int quiet_zone) {
    check_geometry({0, Ecc::L, module_px, quiet_zone, -1});
    if (pgm.size() < 2 || pgm[0] != 'P' || (pgm[1] != '5' && pgm[1] != '2')) bad_image("not a P2/P5 PGM image");
    const bool binary = pgm[1] == '5';
    PgmHeader h(pgm);
    const int w = h.number();
    const int ht = h.number();
    const int maxval = h.number();
    if (w != ht) bad_image("PGM image is not square");
    if (maxval < 1 || maxval > 255) bad_image("PGM maxval must be 1..255");
    const int size = symbol_side_for(w, module_px, quiet_zone);

    std::vector<int> pixels(static_cast<std::size_t>(w) * ht);
    if (binary) {
        h.advance();
        const std::size_t start = h.pos();
        if (pgm.size() - std::min(start, pgm.size()) < pixels.size()) bad_image("PGM pixel data truncated");
        for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = static_cast<unsigned char>(pgm[start + i]);
    } else {
        for (auto& p : pixels) p = h.number();
    }

    QrMatrix m(size);
    const int half = module_px / 2;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const int px = (x + quiet_zone) * module_px + half;
            const int py = (y + quiet_zone) * module_px + half;
            m.set(x, y, pixels[static_cast<std::size_t>(py) * w + px] * 2 < maxval);
        }
    return m;
}

QrMatrix read_svg(std::string_view svg, int module_px, int quiet_zone) {
    check_geometry({0, Ecc::L, module_px, quiet_zone, -1});
    auto attr = [&](std::string_view name) -> std::string_view {
        const std::string key = " " + std::string(name) + "=\"";
        const auto svg_at = svg.find("<svg");
        if (svg_at == std::string_view::npos) bad_image("no <svg> element");
        const auto at = svg.find(key, svg_at);
        if (at == std::string_view::npos) bad_image("svg attribute " + std::string(name) + " missing");
        const auto begin = at + key.size();
        const auto end = svg.find('"', begin);
        if (end == std::string_view::npos) bad_image("unterminated svg attribute");
        return svg.substr(begin, end - begin);
    };
    const auto width = attr("width");
    int side = 0;
    if (std::from_chars(width.data(), width.data() + width.size(), side).ec != std::errc{}) bad_image("bad svg width");
    const int size = symbol_side_for(side, module_px, quiet_zone);

    const auto path_at = svg.find("<path");
    if (path_at == std::string_view::npos) bad_image("no <path> element");
    const auto d_at = svg.find(" d=\"", path_at);
    if (d_at == std::string_view::npos) bad_image("path without d attribute");
    const auto d_end = svg.find('"', d_at + 4);
    const auto d = svg.substr(d_at + 4, d_end - d_at - 4);

    QrMatrix m(size);
    std::size_t i = 0;
    while ((i = d.find('M', i)) != std::string_view::npos) {
        int x = 0;
        int y = 0;
        auto r = std::from_chars(d.data() + i + 1, d.data() + d.size(), x);
        if (r.ec != std::errc{} || r.ptr == d.data() + d.size() || *r.ptr != ',') bad_image("bad svg path move");
        r = std::from_chars(r.ptr + 1, d.data() + d.size(), y);
        if (r.ec != std::errc{}) bad_image("bad svg path move");
        if (x % module_px || y % module_px) bad_image("svg module off the grid");
        const int mx = x / module_px - quiet_zone;
        const int my = y / module_px - quiet_zone;
        if (mx < 0 || my < 0 || mx >= size || my >= size) bad_image("svg module outside the symbol");
        m.set(mx, my, true);
        i = static_cast<std::size_t>(r.ptr - d.data());
    }
    return m;
}

}  // namespace relicpress::qr
