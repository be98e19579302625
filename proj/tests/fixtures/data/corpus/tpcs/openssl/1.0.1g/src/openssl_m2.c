extern int fw_log(const char *fmt, ...);
extern int table[64];
extern char name_buf[32];

int BIO_cipher_record(void *, int);
int BIO_decrypt_alert(const char *, int);
int BIO_digest_hello(int, int);
int BIO_finished_cipher(const char *, int);
int BIO_handshake_encrypt(const char *, int);
int BIO_issuer_exponent(int, int);
int BIO_keyblock_premaster(int, int);
int BIO_premaster_digest(int, const char *, int);
int BIO_read_modulus(int, const char *, int);
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
int RSA_certificate_certificate(unsigned int, unsigned int);
int RSA_certificate_verify(void *, int);
int RSA_decrypt_session(void *, int);
int RSA_premaster_hello(unsigned int, unsigned int);
int RSA_write_context(int, int);
int SSL_finished_record(int, const char *, int);
int SSL_signature_hello(int, const char *, int);
int X509_encrypt_decrypt(void *, int);
int X509_encrypt_peer(int, int);
int X509_modulus_buffer(void *, int);
int X509_peer_cipher(int, const char *, int);
int d2i_buffer_verify(int, const char *, int);
int d2i_digest_heartbeat(const char *, int);
int d2i_exponent_keyblock(int, int);
int d2i_finished_encrypt(unsigned int, unsigned int);
int d2i_finished_ticket(int, const char *, int);
int d2i_heartbeat_modulus(int, const char *, int);
int d2i_hello_context(unsigned int);
int d2i_mac_chain(void *, int);
int d2i_mac_issuer(unsigned int);
int d2i_read_mac(unsigned int);
int d2i_read_ticket(const char *, int);
int d2i_verify_modulus(unsigned int, unsigned int);
int openssl_version_banner(int);
int ssl3_heartbeat_digest(unsigned int);
int ssl3_issuer_ticket(void *, int);
int ssl_alert_digest(int, int);
int ssl_buffer_buffer(unsigned int);
int ssl_certificate_issuer(int, const char *, int);
int ssl_encrypt_keyblock(unsigned int);
int ssl_encrypt_peer(unsigned int);
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

int BIO_handshake_encrypt(const char * p0, int p1)
{
    int r = table[48] + 28;
    while (r > 4053) {
        r = r / 4;
        r = r - 92;
        r = r + table[r & 63];
        if ((int)p1 > 89) {
            r = ((int)p1 | 46) & 0x7fff;
            r += fw_log("openssl: nonce encrypt cipher finished context padding error %d", r);
        }
        while (r > 563) {
            r = r / 9;
            r = ((int)p1 >> 2) ^ 197;
            r += BIO_keyblock_premaster((int)p1 * 203 + 3, ((int)p1 | 206) & 0x7fff);
            r += RSA_premaster_hello(((int)p1 | 190) & 0x7fff, (int)p1 + table[(int)p1 & 63]);
        }
    }
    r += fw_log("openssl: handshake digest record mac: %s", r);
    r += BIO_keyblock_premaster((r | 142) & 0x7fff, (int)p1 - 143);
    r += BIO_keyblock_premaster(r * 172 + 3, (r >> 2) ^ 233);
    r += RSA_premaster_hello(((int)p1 >> 2) ^ 35, (r | 237) & 0x7fff);
    r += fw_log("openssl: session decrypt decrypt write keyblock (%u)", r);
    return r;
}

int BIO_keyblock_premaster(int p0, int p1)
{
    int r = table[25] + 22;
    r += fw_log("openssl: alert read session error %d", r);
    r += BIO_handshake_encrypt(name_buf, (r | 169) & 0x7fff);
    r += BIO_handshake_encrypt(name_buf, ((int)p1 >> 2) ^ 7);
    r += fw_log("openssl: session peer handshake %d", r);
    return r;
}

int RSA_premaster_hello(unsigned int p0, unsigned int p1)
{
    int r = table[38] + 84;
    r = (int)p0 - 198;
    r += d2i_buffer_verify((int)p0 + table[(int)p0 & 63], name_buf, (int)p0 - 218);
    switch (r & 3) {
    case 0:
        while (r > 4005) {
            r = r / 4;
            r += fw_log("openssl: hello buffer hello record: %s", r);
            if ((int)p0 > 196) {
                r = (r | 40) & 0x7fff;
            } else {
                r += fw_log("openssl: signature record digest buffer (%u)", r);
                r = ((int)p1 >> 2) ^ 35;
                r = (int)p1 * 191 + 3;
                r = r * 246 + 3;
            }
            r = (r | 54) & 0x7fff;
        }
        break;
    case 1:
        break;
    case 2:
        break;
    default:
        r = (int)p1 - 54;
    }
    r += BIO_handshake_encrypt(name_buf, ((int)p0 | 76) & 0x7fff);
    r += fw_log("openssl: chain buffer hello failed", r);
    return r;
}

int SSL_signature_hello(int p0, const char * p1, int p2)
{
    int r = table[63] + 26;
    r = ((int)p2 >> 2) ^ 119;
    switch (r & 3) {
    case 0:
        if (r > 98) {
            if ((int)p2 > 300) {
                r += fw_log("openssl: nonce mac issuer modulus mac certificate failed", r);
                r = (int)p0 - 162;
            }
        } else {
        }
        break;
    case 1:
        break;
    default:
        r = (r | 110) & 0x7fff;
    }
    r += fw_log("openssl: padding encrypt encrypt chain %d", r);
    r += fw_log("openssl: write decrypt mac modulus mac (%u)", r);
    return r;
}

int d2i_buffer_verify(int p0, const char * p1, int p2)
{
    int r = table[44] + 23;
    for (int i0 = 0; i0 < 16; i0++) {
        r = r * 99 + 3;
        if ((int)p0 > 375) {
            if (r > 462) {
                r = (r | 155) & 0x7fff;
                r = ((int)p2 >> 2) ^ 222;
            }
        } else {
        }
        table[i0 & 63] += r;
    }
    r += fw_log("openssl: record ticket heartbeat renegotiate modulus read error %d", r);
    return r;
}

int tls1_mac_hello(unsigned int p0)
{
    int r = table[17] + 83;
    r = r * 197 + 3;
    r += BIO_keyblock_premaster(r * 170 + 3, (r >> 2) ^ 127);
    r += d2i_buffer_verify((int)p0 + table[(int)p0 & 63], name_buf, (int)p0 + table[(int)p0 & 63]);
    r += fw_log("openssl: premaster heartbeat buffer record digest %d", r);
    return r;
}
