/**
 * Canonical mask PNG encoder, byte-identical to the server's writer:
 * 8-bit grayscale (0 = visible, 255 = painted), filter byte 0 per row,
 * one IDAT whose zlib stream uses stored (uncompressed) deflate blocks.
 * No compression library involved, which is what makes the output
 * reproducible across runtimes.
 */

const SIGNATURE = new Uint8Array([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
const STORED_BLOCK_MAX = 65535;

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(data: Uint8Array): number {
  let c = 0xffffffff;
  for (let i = 0; i < data.length; i++) {
    c = CRC_TABLE[(c ^ data[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function adler32(data: Uint8Array): number {
  let s1 = 1;
  let s2 = 0;
  for (let i = 0; i < data.length; i++) {
    s1 = (s1 + data[i]) % 65521;
    s2 = (s2 + s1) % 65521;
  }
  return ((s2 << 16) | s1) >>> 0;
}

function u32be(value: number): Uint8Array {
  return new Uint8Array([(value >>> 24) & 0xff, (value >>> 16) & 0xff, (value >>> 8) & 0xff, value & 0xff]);
}

function concat(parts: Uint8Array[]): Uint8Array {
  const total = parts.reduce((n, p) => n + p.length, 0);
  const out = new Uint8Array(total);
  let offset = 0;
  for (const part of parts) {
    out.set(part, offset);
    offset += part.length;
  }
  return out;
}

function chunk(tag: string, payload: Uint8Array): Uint8Array {
  const tagBytes = new Uint8Array([...tag].map((ch) => ch.charCodeAt(0)));
  const body = concat([tagBytes, payload]);
  return concat([u32be(payload.length), body, u32be(crc32(body))]);
}

function zlibStored(raw: Uint8Array): Uint8Array {
  const parts: Uint8Array[] = [new Uint8Array([0x78, 0x01])];
  let pos = 0;
  for (;;) {
    const block = raw.subarray(pos, pos + STORED_BLOCK_MAX);
    pos += block.length;
    const final = pos >= raw.length;
    const len = block.length;
    parts.push(
      new Uint8Array([
        final ? 0x01 : 0x00,
        len & 0xff,
        (len >>> 8) & 0xff,
        (len ^ 0xffff) & 0xff,
        ((len ^ 0xffff) >>> 8) & 0xff,
      ]),
    );
    parts.push(block);
    if (final) break;
  }
  parts.push(u32be(adler32(raw)));
  return concat(parts);
}

/** Serialize mask bits (row-major, 0/1 per cell) to canonical PNG bytes. */
export function encodeMaskPng(width: number, height: number, bits: Uint8Array): Uint8Array {
  if (bits.length !== width * height) {
    throw new Error(`bit buffer length ${bits.length} != ${width}x${height}`);
  }
  const ihdr = concat([u32be(width), u32be(height), new Uint8Array([8, 0, 0, 0, 0])]);
  const raw = new Uint8Array(height * (width + 1));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (width + 1);
    raw[rowStart] = 0; // filter type 0
    for (let x = 0; x < width; x++) {
      raw[rowStart + 1 + x] = bits[y * width + x] ? 255 : 0;
    }
  }
  return concat([SIGNATURE, chunk("IHDR", ihdr), chunk("IDAT", zlibStored(raw)), chunk("IEND", new Uint8Array(0))]);
}
