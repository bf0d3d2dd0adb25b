#!/usr/bin/env python3
"""Script de configuration rapide pour développement BAPFactor."""

import sys
import tempfile
from pathlib import Path


def setup_directories():
    """Crée les répertoires de sortie (rapports, courbes, scénarios)."""
    directories = [
        "runs/reports",
        "runs/curves",
        "runs/scenarios"
    ]

    for dir_path in directories:
        Path(dir_path).mkdir(parents=True, exist_ok=True)
        print(f"✅ Répertoire créé: {dir_path}")
    return True


def check_env_file():
    """Signale un éventuel fichier .env (optionnel: toutes les clés ont un défaut)."""
    if Path(".env").exists():
        print("✅ Fichier .env détecté (BAPFACTOR_*, LOG_LEVEL, ENVIRONMENT)")
    else:
        print("ℹ️  Pas de fichier .env: valeurs par défaut utilisées")
    return True


def test_imports():
    """Teste les imports principaux."""
    try:
        sys.path.insert(0, str(Path.cwd()))

        from src.utils import Config  # noqa: F401
        from src.models import NormedSpace  # noqa: F401
        from src.exceptions import BapFactorError  # noqa: F401

        print("✅ Imports principaux OK")
        return True

    except ImportError as e:
        print(f"❌ Erreur import: {e}")
        print("   Installez les dépendances: pip install -r requirements.txt")
        return False


def test_config():
    """Teste la configuration."""
    try:
        sys.path.insert(0, str(Path.cwd()))
        from src.utils import Config

        config = Config.from_env()
        config.validate()

        print(f"✅ Configuration système valide (plafond d'énumération {config.max_enum_dim})")
        return True

    except Exception as e:
        print(f"❌ Erreur configuration: {e}")
        return False


def test_smoke_scenario():
    """Génère un petit scénario et exécute la factorisation complète."""
    try:
        sys.path.insert(0, str(Path.cwd()))
        from src.core import FactorisationPipeline, gen_scenario, save_scenario
        from src.utils import Config

        config = Config(test_vector_count=20, y_sample_count=20, monotonicity_samples=10)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "smoke.json"
            save_scenario(gen_scenario(1, (2, 2), ("linf", "l1"), 2, (1, 2), 0.5, config), path)
            report = FactorisationPipeline(config).run_factorize(path)

        if report["exit_code"] != 0:
            print(f"❌ Scénario de fumée en échec: {report['failure']}")
            return False
        print("✅ Scénario de fumée factorisé et certifié")
        return True

    except Exception as e:
        print(f"❌ Erreur scénario de fumée: {e}")
        return False


def show_next_steps():
    """Affiche les prochaines étapes."""
    print("\n🚀 Prochaines étapes:")
    print("1. Générez un scénario:")
    print("   python -m src gen --seed 7 --dims 3,3 --tags linf,l1 --blocks 3 --ranks 1,2,1 "
          "-o runs/scenarios/s7.json")
    print()
    print("2. Factorisez-le:")
    print("   python -m src factorize runs/scenarios/s7.json -o runs/reports/s7.json "
          "--csv runs/curves/s7.csv")
    print()
    print("3. Lancez les tests:")
    print("   pytest tests/unit/ -v")


def main():
    """Script principal de setup."""
    print("📐 Configuration BAPFactor - Environnement de développement")
    print("=" * 60)

    steps = [
        ("Création répertoires", setup_directories),
        ("Vérification .env", check_env_file),
        ("Test imports", test_imports),
        ("Test configuration", test_config),
        ("Scénario de fumée", test_smoke_scenario)
    ]

    all_success = True

    for step_name, step_func in steps:
        print(f"\n📋 {step_name}...")
        try:
            success = step_func()
            if not success:
                all_success = False
        except Exception as e:
            print(f"❌ Erreur {step_name}: {e}")
            all_success = False

    print("\n" + "=" * 60)

    if all_success:
        print("✅ Configuration terminée avec succès!")
        show_next_steps()
    else:
        print("❌ Configuration incomplète - corrigez les erreurs ci-dessus")
        return 1

    return 0


if __name__ == "__main__":
    sys.exit(main())
