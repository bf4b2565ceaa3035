# cayley/config.py
from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

ROOT = Path(__file__).resolve().parents[1]

# .env はリポジトリ直下のみ参照（既存の環境変数を優先）
load_dotenv(ROOT / ".env", override=False)

# ============================================
# 数値設定
# ============================================

# recover_metric の固定点反復の上限
CAYLEY_MAX_ITERS = int(os.getenv("CAYLEY_MAX_ITERS", "200"))

# 浮動小数点で判定する箇所の許容誤差
CAYLEY_TOL = float(os.getenv("CAYLEY_TOL", "1e-9"))

# verify-all の乱数コーパス用シード
CAYLEY_SEED = int(os.getenv("CAYLEY_SEED", "20240229"))

# ============================================
# ログ設定
# ============================================

CAYLEY_LOG_LEVEL = os.getenv("CAYLEY_LOG_LEVEL", "INFO").upper()
CAYLEY_LOG_DIR = Path(os.getenv("CAYLEY_LOG_DIR", str(ROOT / "logs")))
