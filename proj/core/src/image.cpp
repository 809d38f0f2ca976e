#include "deconv/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace deconv {

Image::Image(int w, int h, int c, double fill) {
    if (w < 1 || h < 1 || c < 1)
        throw ShapeError("image dimensions must be at least 1x1x1");
    width = w;
    height = h;
    channels = c;
    data.assign(static_cast<std::size_t>(w) * h * c, fill);
}

double Image::min_value() const {
    return *std::min_element(data.begin(), data.end());
}

double Image::max_value() const {
    return *std::max_element(data.begin(), data.end());
}

bool Image::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {

// Byte-level PNM header parser; every error carries the offending offset.
struct PnmParser {
    const std::vector<unsigned char>& buf;
    std::size_t pos = 0;
    const std::string& path;

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError(path + ": " + what + " at byte offset " +
                      std::to_string(pos));
    }

    bool eof() const { return pos >= buf.size(); }
    unsigned char peek() const { return buf[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            if (std::isspace(peek())) {
                ++pos;
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    int parse_uint(const char* name) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek()))
            fail(std::string("expected ") + name);
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (peek() - '0');
            if (v > std::numeric_limits<int>::max())
                fail(std::string(name) + " out of range");
            ++pos;
        }
        return static_cast<int>(v);
    }
};

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return buf;
}

}  // namespace

Image load_image(const std::string& path) {
    std::vector<unsigned char> buf = read_file(path);
    PnmParser p{buf, 0, path};

    if (buf.size() < 2) p.fail("truncated magic");
    int channels = 0;
    if (buf[0] == 'P' && buf[1] == '5')
        channels = 1;
    else if (buf[0] == 'P' && buf[1] == '6')
        channels = 3;
    else
        p.fail("not a binary PGM/PPM (expected P5 or P6 magic)");
    p.pos = 2;

    const int w = p.parse_uint("width");
    const int h = p.parse_uint("height");
    const int maxval = p.parse_uint("maxval");
    if (w < 1 || h < 1) p.fail("degenerate dimensions");
    if (maxval < 1 || maxval > 255) p.fail("unsupported maxval (must be <= 255)");

    // Exactly one whitespace byte separates the header from the payload.
    if (p.eof() || !std::isspace(p.peek())) p.fail("expected whitespace after maxval");
    ++p.pos;

    const std::size_t expected =
        static_cast<std::size_t>(w) * h * channels;
    if (buf.size() - p.pos < expected) {
        p.pos = buf.size();
        throw IoError(path + ": truncated payload, expected " +
                      std::to_string(expected) + " bytes but file ends at byte offset " +
                      std::to_string(buf.size()));
    }

    Image img(w, h, channels);
    for (std::size_t i = 0; i < expected; ++i)
        img.data[i] = static_cast<double>(buf[p.pos + i]);
    return img;
}

void save_image(const Image& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3)
        throw ShapeError("unsupported channel count " +
                         std::to_string(img.channels) +
                         " for PNM output (must be 1 or 3)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");

    out << (img.channels == 1 ? "P5" : "P6") << "\n"
        << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> bytes(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        double v = std::clamp(img.data[i], 0.0, 255.0);
        double r = std::floor(v + 0.5);  // round half-up
        bytes[i] = static_cast<unsigned char>(std::clamp(r, 0.0, 255.0));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(path + ": write failed");
}

Image apply_intensity_floor(const Image& img, double floor, std::int64_t* lifted) {
    Image out = img;
    std::int64_t n = 0;
    for (double& v : out.data) {
        if (v < floor) {
            v = floor;
            ++n;
        }
    }
    if (lifted) *lifted = n;
    return out;
}

PointSpreadFunction PointSpreadFunction::delta() {
    return PointSpreadFunction{};
}

PointSpreadFunction PointSpreadFunction::from_weights(int width, int height,
                                                      std::vector<double> weights) {
    if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0)
        throw ShapeError("kernel dimensions must be odd, got " +
                         std::to_string(width) + "x" + std::to_string(height));
    if (weights.size() != static_cast<std::size_t>(width) * height)
        throw ShapeError("kernel weight count does not match dimensions");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw DomainError("kernel weights must be finite and nonnegative");
        sum += w;
    }
    if (sum <= 0.0) throw DomainError("degenerate kernel: all weights are zero");
    for (double& w : weights) w /= sum;
    PointSpreadFunction psf;
    psf.width = width;
    psf.height = height;
    psf.weights = std::move(weights);
    return psf;
}

PointSpreadFunction load_psf(const std::string& path) {
    std::vector<unsigned char> head = read_file(path);
    if (head.size() >= 2 && head[0] == 'P' && (head[1] == '5' || head[1] == '6')) {
        if (head[1] == '6')
            throw IoError(path + ": colour images are not accepted as kernels");
        Image img = load_image(path);
        return PointSpreadFunction::from_weights(img.width, img.height,
                                                 std::move(img.data));
    }

    // Text grid: one row per line, whitespace-separated nonnegative decimals.
    std::string text(head.begin(), head.end());
    std::istringstream lines(text);
    std::vector<double> weights;
    std::string line;
    int rows = 0;
    int cols = -1;
    while (std::getline(lines, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof())
            throw IoError(path + ": unparseable kernel entry in row " +
                          std::to_string(rows + 1));
        if (row.empty()) continue;  // blank line
        if (cols < 0)
            cols = static_cast<int>(row.size());
        else if (static_cast<int>(row.size()) != cols)
            throw ShapeError(path + ": kernel rows have unequal lengths");
        weights.insert(weights.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) throw IoError(path + ": empty kernel file");
    return PointSpreadFunction::from_weights(cols, rows, std::move(weights));
}

}  // namespace deconv
