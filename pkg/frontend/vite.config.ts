import { defineConfig } from 'vitest/config';

export default defineConfig({
  server: {
    proxy: {
      // The decision service; run `ruck-ep serve` alongside `npm run dev`.
      '/api': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
  },
});
