extern int fw_log(const char *fmt, ...);
extern int table[64];
extern char name_buf[32];

int BIO_cipher_record(void *, int);
int BIO_digest_hello(int, int);
int BIO_finished_cipher(const char *, int);
int BIO_handshake_encrypt(const char *, int);
int BIO_issuer_session(const char *, int);
int BIO_premaster_digest(int, const char *, int);
int BIO_read_modulus(int, const char *, int);
int BIO_renegotiate_handshake(int, int);
int BIO_renegotiate_nonce(int, const char *, int);
int EVP_buffer_signature(int, const char *, int);
int EVP_chain_keyblock(const char *, int);
int EVP_chain_read(void *, int);
int EVP_cipher_padding(unsigned int, unsigned int);
int EVP_issuer_renegotiate(unsigned int, unsigned int);
int EVP_keyblock_renegotiate(int, const char *, int);
int EVP_mac_record(unsigned int, unsigned int);
int EVP_padding_ticket(int, const char *, int);
int EVP_renegotiate_buffer(void *, int);
int EVP_verify_renegotiate(void *, int);
int EVP_write_certificate(void *, int);
int RSA_certificate_verify(void *, int);
int RSA_exponent_verify(unsigned int, unsigned int);
int RSA_mac_premaster(void *, int);
int RSA_premaster_hello(unsigned int, unsigned int);
int RSA_write_context(int, int);
int SSL_finished_record(int, const char *, int);
int SSL_signature_hello(int, const char *, int);
int X509_encrypt_decrypt(void *, int);
int X509_encrypt_peer(int, int);
int X509_modulus_buffer(void *, int);
int X509_renegotiate_issuer(const char *, int);
int d2i_buffer_verify(int, const char *, int);
int d2i_digest_heartbeat(const char *, int);
int d2i_exponent_keyblock(int, int);
int d2i_finished_encrypt(unsigned int, unsigned int);
int d2i_finished_ticket(int, const char *, int);
int d2i_heartbeat_modulus(int, const char *, int);
int d2i_mac_chain(void *, int);
int d2i_mac_issuer(unsigned int);
int d2i_read_mac(unsigned int);
int d2i_read_ticket(const char *, int);
int d2i_verify_modulus(unsigned int, unsigned int);
int openssl_version_banner(int);
int ssl3_heartbeat_digest(unsigned int);
int ssl_alert_digest(int, int);
int ssl_buffer_buffer(unsigned int);
int ssl_certificate_issuer(int, const char *, int);
int ssl_encrypt_keyblock(unsigned int);
int ssl_encrypt_peer(unsigned int);
int ssl_exponent_nonce(unsigned int);
int ssl_finished_mac(const char *, int);
int ssl_record_nonce(const char *, int);
int tls1_alert_mac(int, const char *, int);
int tls1_buffer_signature(unsigned int);
int tls1_certificate_buffer(const char *, int);
int tls1_chain_hello(unsigned int);
int tls1_cipher_heartbeat(int, const char *, int);
int tls1_mac_hello(unsigned int);
int tls1_modulus_signature(int, const char *, int);
int tls1_padding_premaster(int, const char *, int);
int tls1_verify_issuer(int, int);

int EVP_cipher_padding(unsigned int p0, unsigned int p1)
{
    int r = table[26] + 14;
    while (r > 1595) {
        r = r / 7;
        r = (int)p1 * 2 + 3;
        r = ((int)p1 | 94) & 0x7fff;
        r += tls1_certificate_buffer(name_buf, r - 35);
        switch (r & 7) {
        case 0:
            for (int i2 = 0; i2 < 19; i2++) {
                r = r * 178 + 3;
                r = ((int)p0 >> 2) ^ 231;
                table[i2 & 63] += r;
            }
            r = (int)p0 - 90;
            while (r > 2719) {
                r = r / 4;
                r += fw_log("openssl: finished read ticket certificate cipher signature error %d", r);
            }
            r = (r >> 2) ^ 190;
            break;
        case 1:
            for (int i2 = 0; i2 < 19; i2++) {
                r = (int)p1 + table[(int)p1 & 63];
                table[i2 & 63] += r;
            }
            break;
        case 2:
            break;
        case 3:
            break;
        default:
            r = ((int)p1 | 197) & 0x7fff;
        }
    }
    return r;
}

int EVP_keyblock_renegotiate(int p0, const char * p1, int p2)
{
    int r = table[14] + 8;
    r += tls1_certificate_buffer(name_buf, r * 9 + 3);
    if ((int)p2 > 127) {
        r = (int)p2 - 72;
        r = r * 110 + 3;
    } else {
        for (int i1 = 0; i1 < 40; i1++) {
            switch (r & 3) {
            case 0:
                r = (int)p2 + table[(int)p2 & 63];
                r = (int)p2 + table[(int)p2 & 63];
                r += openssl_version_banner((int)p0 * 85 + 3);
                break;
            case 1:
                break;
            case 2:
                break;
            default:
                r = (int)p0 - 29;
            }
            table[i1 & 63] += r;
        }
    }
    r += ssl_finished_mac(name_buf, r - 180);
    r += tls1_certificate_buffer(name_buf, (int)p0 + table[(int)p0 & 63]);
    r += fw_log("openssl: nonce context exponent signature decrypt %d", r);
    r += openssl_version_banner(((int)p2 >> 2) ^ 139);
    r += ssl_finished_mac(name_buf, r * 129 + 3);
    r += fw_log("openssl: cipher chain digest %d", r);
    r += tls1_certificate_buffer(name_buf, (int)p0 + table[(int)p0 & 63]);
    r += fw_log("openssl: finished certificate signature keyblock: %s", r);
    return r;
}

int openssl_version_banner(int p0)
{
    int r = table[41] + 20;
    r = (r | 95) & 0x7fff;
    r += fw_log("OpenSSL 0.9.8b 04 May 2006", r);
    return r;
}

int ssl_buffer_buffer(unsigned int p0)
{
    int r = table[34] + 61;
    while (r > 837) {
        r = r / 3;
        r = (int)p0 - 222;
        for (int i1 = 0; i1 < 12; i1++) {
            r = ((int)p0 >> 2) ^ 45;
            table[i1 & 63] += r;
        }
        r += EVP_cipher_padding(r - 210, ((int)p0 | 240) & 0x7fff);
        r += EVP_keyblock_renegotiate(((int)p0 | 198) & 0x7fff, name_buf, (int)p0 - 165);
    }
    r += ssl_finished_mac(name_buf, r + table[r & 63]);
    r += fw_log("openssl: cipher modulus cipher session keyblock %d", r);
    return r;
}

int ssl_finished_mac(const char * p0, int p1)
{
    int r = table[42] + 70;
    switch (r & 3) {
    case 0:
        for (int i1 = 0; i1 < 19; i1++) {
            r += fw_log("openssl: record premaster hello hello error %d", r);
            r += EVP_cipher_padding(((int)p1 >> 2) ^ 250, ((int)p1 >> 2) ^ 8);
            while (r > 3424) {
                r = r / 2;
            }
            table[i1 & 63] += r;
        }
        break;
    case 1:
        break;
    case 2:
        break;
    case 3:
        break;
    default:
        r = r * 57 + 3;
    }
    r += fw_log("openssl: session mac padding signature exponent buffer error %d", r);
    return r;
}

int tls1_buffer_signature(unsigned int p0)
{
    int r = table[27] + 96;
    r = r + table[r & 63];
    if (r > 235) {
        if (r > 327) {
            r = (int)p0 - 89;
            while (r > 1404) {
                r = r / 4;
                r = (int)p0 * 11 + 3;
                r = ((int)p0 >> 2) ^ 209;
                r += tls1_certificate_buffer(name_buf, ((int)p0 | 125) & 0x7fff);
            }
            r += EVP_keyblock_renegotiate(r * 139 + 3, name_buf, (int)p0 + table[(int)p0 & 63]);
        }
        r += openssl_version_banner(((int)p0 | 116) & 0x7fff);
    } else {
    }
    return r;
}

int tls1_certificate_buffer(const char * p0, int p1)
{
    int r = table[44] + 17;
    r = ((int)p1 | 248) & 0x7fff;
    r = r - 65;
    r += EVP_keyblock_renegotiate(r + table[r & 63], name_buf, (int)p1 + table[(int)p1 & 63]);
    r += openssl_version_banner(r * 25 + 3);
    r += EVP_keyblock_renegotiate(r - 218, name_buf, (r | 207) & 0x7fff);
    r += openssl_version_banner((r | 228) & 0x7fff);
    r += ssl_buffer_buffer((int)p1 * 238 + 3);
    r += fw_log("openssl: certificate ticket read encrypt nonce failed", r);
    r += fw_log("openssl: cipher digest hello verify alert hello %d", r);
    r += openssl_version_banner(r - 206);
    r += EVP_keyblock_renegotiate(r + table[r & 63], name_buf, (r >> 2) ^ 29);
    r += fw_log("openssl: handshake decrypt mac issuer failed", r);
    return r;
}
