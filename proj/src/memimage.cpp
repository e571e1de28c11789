//===- memimage.cpp -------------------------------------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/memimage.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace gridloom {

int64_t MemoryImage::flat_index(const IterVec &idx) const {
  if (idx.size() != extents.size())
    throw std::runtime_error("image '" + name + "': rank mismatch");
  int64_t f = 0;
  for (size_t d = 0; d < extents.size(); ++d) {
    if (idx[d] < 0 || idx[d] >= extents[d])
      throw std::runtime_error("image '" + name + "': index " + ivec_str(idx) +
                               " out of bounds");
    f = f * extents[d] + idx[d];
  }
  return f;
}

bool MemoryImage::in_bounds(const IterVec &idx) const {
  if (idx.size() != extents.size())
    return false;
  for (size_t d = 0; d < extents.size(); ++d)
    if (idx[d] < 0 || idx[d] >= extents[d])
      return false;
  return true;
}

MemoryImage MemoryImage::zeros(std::string name, std::vector<int64_t> extents) {
  MemoryImage img;
  img.name = std::move(name);
  img.extents = std::move(extents);
  img.data.assign(static_cast<size_t>(img.size()), 0);
  return img;
}

namespace {

template <typename T> void put_le(std::ostream &os, T v) {
  unsigned char buf[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<unsigned char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T> T get_le(std::istream &is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char *>(buf), sizeof(T));
  if (!is)
    throw std::runtime_error("truncated memory image");
  uint64_t v = 0;
  for (size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

constexpr char kMagic[4] = {'G', 'L', 'M', 'I'};

} // namespace

void write_images(std::ostream &os, const ImageSet &images) {
  for (auto &[name, img] : images) {
    os.write(kMagic, 4);
    put_le<uint32_t>(os, 1);
    put_le<uint32_t>(os, static_cast<uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_le<uint32_t>(os, static_cast<uint32_t>(img.extents.size()));
    for (auto e : img.extents)
      put_le<uint64_t>(os, static_cast<uint64_t>(e));
    for (auto w : img.data)
      put_le<uint32_t>(os, static_cast<uint32_t>(w));
  }
}

ImageSet read_images(std::istream &is) {
  ImageSet set;
  char magic[4];
  while (is.read(magic, 4)) {
    if (std::memcmp(magic, kMagic, 4) != 0)
      throw std::runtime_error("bad memory image magic");
    uint32_t version = get_le<uint32_t>(is);
    if (version != 1)
      throw std::runtime_error("unsupported memory image version");
    uint32_t nlen = get_le<uint32_t>(is);
    std::string name(nlen, '\0');
    is.read(name.data(), nlen);
    uint32_t rank = get_le<uint32_t>(is);
    MemoryImage img;
    img.name = name;
    img.extents.resize(rank);
    for (uint32_t d = 0; d < rank; ++d)
      img.extents[d] = static_cast<int64_t>(get_le<uint64_t>(is));
    img.data.resize(static_cast<size_t>(img.size()));
    for (auto &w : img.data)
      w = static_cast<Word>(get_le<uint32_t>(is));
    if (!is)
      throw std::runtime_error("truncated memory image payload");
    set.emplace(name, std::move(img));
  }
  return set;
}

void write_images_file(const std::string &path, const ImageSet &images) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  write_images(os, images);
}

ImageSet read_images_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open '" + path + "'");
  return read_images(is);
}

bool images_equal(const ImageSet &a, const ImageSet &b) {
  if (a.size() != b.size())
    return false;
  for (auto &[name, img] : a) {
    auto it = b.find(name);
    if (it == b.end() || it->second.extents != img.extents ||
        it->second.data != img.data)
      return false;
  }
  return true;
}

} // namespace gridloom
