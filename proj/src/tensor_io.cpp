#include "axim/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace axim {

static_assert(std::endian::native == std::endian::little,
              "tensor file format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'A', 'X', 'I', 'M'};

std::int64_t checked_product(const std::vector<std::int64_t>& dims) {
  if (dims.empty()) throw std::invalid_argument("tensor: dims must be nonempty");
  std::int64_t n = 1;
  for (std::int64_t d : dims) {
    if (d < 1) throw std::invalid_argument("tensor: dims must be positive");
    if (n > (std::int64_t{1} << 56) / d) throw std::invalid_argument("tensor: dims overflow");
    n *= d;
  }
  return n;
}

}  // namespace

void write_tensor(const std::string& path, const std::vector<std::int64_t>& dims,
                  const std::string& tag, const std::vector<double>& payload) {
  const std::int64_t count = checked_product(dims);
  if (count != static_cast<std::int64_t>(payload.size())) {
    throw std::invalid_argument("write_tensor: payload length does not match dims");
  }
  std::ostringstream header;
  header << "ndim=" << dims.size() << "\n";
  header << "dims=";
  for (std::size_t i = 0; i < dims.size(); ++i) header << (i ? " " : "") << dims[i];
  header << "\n";
  header << "order=col-major\n";
  header << "dtype=f64\n";
  if (!tag.empty()) header << "tag=" << tag << "\n";
  const std::string htext = header.str();

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_tensor: cannot open " + path);
  os.write(kMagic, 4);
  const std::uint32_t hlen = static_cast<std::uint32_t>(htext.size());
  os.write(reinterpret_cast<const char*>(&hlen), 4);
  os.write(htext.data(), static_cast<std::streamsize>(htext.size()));
  os.write(reinterpret_cast<const char*>(payload.data()),
           static_cast<std::streamsize>(payload.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write_tensor: write failed for " + path);
}

std::vector<double> read_tensor(const std::string& path, TensorInfo& info) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_tensor: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("read_tensor: bad magic in " + path);
  }
  std::uint32_t hlen = 0;
  is.read(reinterpret_cast<char*>(&hlen), 4);
  if (!is || hlen == 0 || hlen > (1u << 20)) {
    throw std::runtime_error("read_tensor: bad header length in " + path);
  }
  std::string htext(hlen, '\0');
  is.read(htext.data(), hlen);
  if (!is) throw std::runtime_error("read_tensor: truncated header in " + path);

  info = TensorInfo{};
  std::size_t ndim = 0;
  bool have_ndim = false, have_order = false, have_dtype = false;
  std::istringstream hs(htext);
  std::string line;
  while (std::getline(hs, line)) {
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("read_tensor: malformed header line '" + line + "'");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "ndim") {
      ndim = static_cast<std::size_t>(std::stoll(value));
      have_ndim = true;
    } else if (key == "dims") {
      std::istringstream ds(value);
      std::int64_t d;
      while (ds >> d) info.dims.push_back(d);
    } else if (key == "order") {
      if (value != "col-major") throw std::runtime_error("read_tensor: unsupported order " + value);
      have_order = true;
    } else if (key == "dtype") {
      if (value != "f64") throw std::runtime_error("read_tensor: unsupported dtype " + value);
      have_dtype = true;
    } else if (key == "tag") {
      info.tag = value;
    } else {
      throw std::runtime_error("read_tensor: unknown header key '" + key + "'");
    }
  }
  if (!have_ndim || !have_order || !have_dtype || info.dims.size() != ndim) {
    throw std::runtime_error("read_tensor: incomplete header in " + path);
  }

  const std::int64_t count = checked_product(info.dims);
  std::vector<double> payload(static_cast<std::size_t>(count));
  is.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size() * sizeof(double)));
  if (!is) throw std::runtime_error("read_tensor: truncated payload in " + path);
  is.peek();
  if (!is.eof()) throw std::runtime_error("read_tensor: trailing bytes in " + path);
  return payload;
}

void write_image_tensor(const std::string& path, const Image& img, const std::string& tag) {
  std::vector<double> payload(img.values().begin(), img.values().end());
  write_tensor(path, {img.rows(), img.cols()}, tag, payload);
}

Image read_image_tensor(const std::string& path, std::string* tag) {
  TensorInfo info;
  std::vector<double> payload = read_tensor(path, info);
  if (info.dims.size() != 2) {
    throw std::runtime_error("read_image_tensor: expected a 2-axis tensor in " + path);
  }
  if (tag) *tag = info.tag;
  return Image(static_cast<int>(info.dims[0]), static_cast<int>(info.dims[1]),
               std::move(payload));
}

void write_kernel_stack_tensor(const std::string& path, const AxialKernelStack& stack) {
  const int mt = stack.image_rows();
  const int mk = stack.kernel_rows();
  const int nk = stack.kernel_cols();
  std::vector<double> payload;
  payload.reserve(static_cast<std::size_t>(mt) * mk * nk);
  for (int i_h = 1; i_h <= mt; ++i_h) {
    const Kernel k = stack.kernel(i_h);
    payload.insert(payload.end(), k.values().begin(), k.values().end());
  }
  write_tensor(path, {mt, mk, nk}, "kernel-stack", payload);
}

AxialKernelStack read_kernel_stack_tensor(const std::string& path, int image_cols) {
  TensorInfo info;
  std::vector<double> payload = read_tensor(path, info);
  if (info.dims.size() != 3) {
    throw std::runtime_error("read_kernel_stack_tensor: expected a 3-axis tensor in " + path);
  }
  const int mt = static_cast<int>(info.dims[0]);
  const int mk = static_cast<int>(info.dims[1]);
  const int nk = static_cast<int>(info.dims[2]);
  if (mk % 2 == 0 || nk % 2 == 0) {
    throw std::runtime_error("read_kernel_stack_tensor: kernel dimensions must be odd");
  }
  AxialKernelStack stack(mt, image_cols, (mk - 1) / 2, (nk - 1) / 2);
  const double* p = payload.data();
  for (int i_h = 1; i_h <= mt; ++i_h) {
    Kernel k(mk, nk, std::vector<double>(p, p + static_cast<std::size_t>(mk) * nk));
    stack.set_kernel(i_h, k);
    p += static_cast<std::size_t>(mk) * nk;
  }
  return stack;
}

}  // namespace axim
