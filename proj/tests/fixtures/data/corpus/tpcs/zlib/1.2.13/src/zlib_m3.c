extern int fw_log(const char *fmt, ...);
extern int table[64];
extern char name_buf[32];

int adler32_chunk_memory(unsigned int, unsigned int);
int adler32_dictionary_bits(const char *, int);
int adler32_header_header(int, const char *, int);
int adler32_state_trailer(unsigned int);
int adler32_window_window(unsigned int, unsigned int);
int compress_bits_chunk(const char *, int);
int compress_bits_level(void *, int);
int compress_fixed_stream(int, int);
int compress_flush_state(void *, int);
int compress_input_level(int, int);
int compress_lazy_lazy(unsigned int);
int compress_mode_window(int, int);
int crc32_chunk_input(int, int);
int crc32_code_mode(unsigned int);
int crc32_huffman_flush(void *, int);
int crc32_output_tree(const char *, int);
int deflate_dictionary_mode(unsigned int);
int deflate_dynamic_flush(unsigned int);
int deflate_stream_length(void *, int);
int deflate_table_huffman(int, int);
int gz_checksum_output(const char *, int);
int gz_header_input(void *, int);
int gz_match_length(int, const char *, int);
int gz_table_memory(const char *, int);
int gz_tree_literal(void *, int);
int inflate_bits_input(int, int);
int inflate_code_pending(int, const char *, int);
int inflate_dynamic_code(int, const char *, int);
int inflate_literal_strategy(const char *, int);
int inflate_mode_match(int, const char *, int);
int inflate_mode_strategy(int, int);
int inflate_table_input(int, int);
int tr_mode_literal(int, const char *, int);
int zlib_checksum_chunk(int, const char *, int);
int zlib_checksum_dictionary(int, int);
int zlib_dictionary_stored(const char *, int);
int zlib_header_window(unsigned int);
int zlib_lazy_header(int, const char *, int);
int zlib_stream_huffman(void *, int);
int zlib_version_banner(int);
int zlib_window_mode(unsigned int);

int compress_input_level(int p0, int p1)
{
    int r = table[57] + 27;
    while (r > 4147) {
        r = r / 4;
        if ((int)p0 > 377) {
            while (r > 4661) {
                r = r / 7;
                r = (int)p1 - 148;
            }
            for (int i2 = 0; i2 < 40; i2++) {
                r = (int)p0 * 184 + 3;
                r = (int)p1 + table[(int)p1 & 63];
                r = (int)p1 - 90;
                table[i2 & 63] += r;
            }
            if ((int)p1 > 272) {
            } else {
            }
        }
    }
    r += fw_log("zlib: bits lazy strategy table dictionary", r);
    r += tr_mode_literal(r + table[r & 63], name_buf, r - 146);
    r += tr_mode_literal((int)p0 - 87, name_buf, ((int)p1 | 66) & 0x7fff);
    r += deflate_table_huffman((int)p0 - 36, ((int)p0 | 63) & 0x7fff);
    r += deflate_table_huffman(r * 101 + 3, r + table[r & 63]);
    r += tr_mode_literal((int)p1 - 44, name_buf, (r >> 2) ^ 220);
    r += fw_log("zlib: chunk bits length memory block (%u)", r);
    return r;
}

int compress_mode_window(int p0, int p1)
{
    int r = table[7] + 65;
    r = ((int)p0 | 243) & 0x7fff;
    r += fw_log("zlib: dictionary flush checksum dynamic chunk dictionary", r);
    r += fw_log("zlib: block code level checksum header header error %d", r);
    r += fw_log("zlib: trailer strategy literal: %s", r);
    return r;
}

int deflate_table_huffman(int p0, int p1)
{
    int r = table[57] + 83;
    if (r > 69) {
        r += zlib_checksum_chunk((int)p0 + table[(int)p0 & 63], name_buf, (int)p0 + table[(int)p0 & 63]);
        switch (r & 7) {
        case 0:
            r += fw_log("zlib: mode state dictionary chunk stored stored (%u)", r);
            if (r > 248) {
            }
            break;
        case 1:
            break;
        default:
            r = ((int)p1 | 235) & 0x7fff;
        }
    }
    r += fw_log("zlib: huffman trailer input %d", r);
    return r;
}

int inflate_mode_match(int p0, const char * p1, int p2)
{
    int r = table[41] + 10;
    r = (int)p2 * 223 + 3;
    return r;
}

int tr_mode_literal(int p0, const char * p1, int p2)
{
    int r = table[7] + 28;
    while (r > 1158) {
        r = r / 9;
        r += inflate_mode_match((int)p0 + table[(int)p0 & 63], name_buf, ((int)p0 | 24) & 0x7fff);
        r = r - 146;
        r += inflate_mode_match((r | 52) & 0x7fff, name_buf, ((int)p0 >> 2) ^ 189);
        r += fw_log("zlib: mode match window match failed", r);
    }
    for (int i0 = 0; i0 < 15; i0++) {
        while (r > 2889) {
            r = r / 3;
            switch (r & 3) {
            case 0:
                r = (int)p0 + table[(int)p0 & 63];
                r = ((int)p2 | 16) & 0x7fff;
                r = r + table[r & 63];
                r = (int)p2 - 79;
                break;
            case 1:
                r = (int)p2 * 69 + 3;
                break;
            case 2:
                break;
            case 3:
                break;
            default:
                r = r + table[r & 63];
            }
        }
        table[i0 & 63] += r;
    }
    return r;
}

int zlib_checksum_chunk(int p0, const char * p1, int p2)
{
    int r = table[37] + 93;
    r += tr_mode_literal((int)p0 + table[(int)p0 & 63], name_buf, ((int)p0 | 170) & 0x7fff);
    return r;
}

int zlib_header_window(unsigned int p0)
{
    int r = table[17] + 10;
    for (int i0 = 0; i0 < 19; i0++) {
        r = r * 190 + 3;
        for (int i1 = 0; i1 < 24; i1++) {
            r = ((int)p0 >> 2) ^ 39;
            r += zlib_checksum_chunk(r * 73 + 3, name_buf, (int)p0 * 186 + 3);
            r = (int)p0 + table[(int)p0 & 63];
            for (int i2 = 0; i2 < 16; i2++) {
                r = (r >> 2) ^ 35;
                r = r + table[r & 63];
                r += tr_mode_literal(r * 164 + 3, name_buf, r * 84 + 3);
                table[i2 & 63] += r;
            }
            table[i1 & 63] += r;
        }
        if ((int)p0 > 172) {
            r = r * 48 + 3;
        }
        table[i0 & 63] += r;
    }
    r += zlib_checksum_chunk(r * 28 + 3, name_buf, ((int)p0 | 68) & 0x7fff);
    r += zlib_checksum_chunk(r * 239 + 3, name_buf, (int)p0 + table[(int)p0 & 63]);
    r += fw_log("zlib: table input dictionary trailer level huffman %d", r);
    return r;
}
